// Copyright 2026 The OntoForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The ontology quadruple: concepts, semantic relations between them,
// interpretation records, and a small catalog of checkable axioms. The
// concepts and relations together form the ontograph.
//
// Ontology is a value type. Mutating members give the strong exception
// guarantee, so a failed AddRelation leaves the ontology untouched, and a
// copy is an independent snapshot that is safe to share read-only.

#ifndef ONTOFORGE_ONTOLOGY_H_
#define ONTOFORGE_ONTOLOGY_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ontoforge {

enum class ConceptKind { kObject, kProcess, kTask };
enum class OntologyKind { kDocument, kDomain, kIntegrated };

std::string_view ConceptKindName(ConceptKind kind);
ConceptKind ParseConceptKind(std::string_view name);
std::string_view OntologyKindName(OntologyKind kind);
OntologyKind ParseOntologyKind(std::string_view name);

struct ConceptId {
  std::string value;

  // slug(normalized) + "-" + first 8 hex digits of SHA-256(normalized).
  static ConceptId FromNormalizedLabel(std::string_view normalized);

  bool empty() const { return value.empty(); }
  auto operator<=>(const ConceptId &) const = default;
};

// Location of a mention: document id and code point range.
struct Span {
  std::string doc;
  size_t begin = 0;
  size_t end = 0;
  auto operator<=>(const Span &) const = default;
};

struct Concept {
  ConceptId id;
  std::string label;
  std::string normalized_label;
  ConceptKind kind = ConceptKind::kObject;
  std::vector<Span> provenance;  // sorted, unique

  bool operator==(const Concept &) const = default;
};

// is_a, part_of, associated_with, or an extension tag matching
// [a-z0-9_-]+.
class RelationType {
 public:
  RelationType() : tag_("associated_with") {}
  static RelationType FromTag(std::string_view tag);
  static RelationType IsA() { return RelationType("is_a"); }
  static RelationType PartOf() { return RelationType("part_of"); }
  static RelationType AssociatedWith() { return RelationType("associated_with"); }

  const std::string &tag() const { return tag_; }
  // is_a and part_of participate in acyclicity checks.
  bool hierarchical() const { return tag_ == "is_a" || tag_ == "part_of"; }

  auto operator<=>(const RelationType &) const = default;

 private:
  explicit RelationType(std::string tag) : tag_(std::move(tag)) {}
  std::string tag_;
};

struct Evidence {
  std::string doc;     // empty for corpus-level rules
  long sentence = -1;  // -1 when not tied to a sentence
  std::string rule;    // "pattern:<id>", "nesting", "pmi", ...
  auto operator<=>(const Evidence &) const = default;
};

struct RelationKey {
  ConceptId source;
  ConceptId target;
  RelationType type;
  auto operator<=>(const RelationKey &) const = default;
};

struct SemanticRelation {
  ConceptId source;
  ConceptId target;
  RelationType type;
  double confidence = 1.0;
  std::vector<Evidence> evidence;  // sorted, unique

  RelationKey key() const { return {source, target, type}; }
  bool operator==(const SemanticRelation &) const = default;
};

enum class SubjectKind { kConcept, kRelationType };

// A gloss attached to a concept or to a relation type.
struct Interpretation {
  SubjectKind subject_kind = SubjectKind::kConcept;
  std::string subject;  // ConceptId value or relation type tag
  std::string gloss;
  std::string source;   // dictionary id
  auto operator<=>(const Interpretation &) const = default;
};

enum class AxiomForm { kDefinition, kConstraint };

// Every edge of `type` runs from a `source_kind` concept to a `target_kind`
// concept.
struct DomainRangeAxiom {
  RelationType type;
  ConceptKind source_kind = ConceptKind::kObject;
  ConceptKind target_kind = ConceptKind::kObject;
  bool operator==(const DomainRangeAxiom &) const = default;
};

// No concept may be (an is_a descendant of) two distinct members.
struct DisjointAxiom {
  std::set<ConceptId> members;
  bool operator==(const DisjointAxiom &) const = default;
};

struct IrreflexiveAxiom {
  RelationType type;
  bool operator==(const IrreflexiveAxiom &) const = default;
};

struct AcyclicAxiom {
  RelationType type;
  bool operator==(const AcyclicAxiom &) const = default;
};

using AxiomBody =
    std::variant<DomainRangeAxiom, DisjointAxiom, IrreflexiveAxiom, AcyclicAxiom>;

struct Axiom {
  std::string id;
  AxiomForm form = AxiomForm::kConstraint;
  AxiomBody body;
  // When set, only edges with both endpoints (or concepts) in scope are
  // checked.
  std::optional<std::set<ConceptId>> scope;

  bool operator==(const Axiom &) const = default;
};

struct Violation {
  std::string axiom_id;  // "structural:<rule>" for built-in invariants
  std::vector<std::string> elements;
  std::string message;
  auto operator<=>(const Violation &) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool operator==(const ValidationReport &) const = default;
};

struct OntologyMeta {
  std::string created;  // ISO 8601
  std::string project;
  bool operator==(const OntologyMeta &) const = default;
};

class Ontology {
 public:
  // Throws invalid-argument for an empty name.
  static Ontology Create(std::string name, OntologyKind kind,
                         OntologyMeta meta = {});

  // Assembles an ontology from already-built parts and rejects it with
  // validation-error if any structural invariant fails. Axiom violations do
  // not reject.
  static Ontology FromParts(std::string name, OntologyKind kind,
                            OntologyMeta meta, std::vector<Concept> concepts,
                            std::vector<SemanticRelation> relations,
                            std::vector<Interpretation> interpretations,
                            std::vector<Axiom> axioms);

  const std::string &name() const { return name_; }
  OntologyKind kind() const { return kind_; }
  const OntologyMeta &meta() const { return meta_; }
  void set_name(std::string name);
  void set_kind(OntologyKind kind) { kind_ = kind; }
  void set_meta(OntologyMeta meta) { meta_ = std::move(meta); }

  const std::map<ConceptId, Concept> &concepts() const { return concepts_; }
  const std::map<RelationKey, SemanticRelation> &relations() const {
    return relations_;
  }
  const std::set<Interpretation> &interpretations() const {
    return interpretations_;
  }
  const std::map<std::string, Axiom> &axioms() const { return axioms_; }

  const Concept *FindConcept(const ConceptId &id) const;
  const Concept *FindByLabel(std::string_view label) const;

  // Idempotent upsert keyed by normalized label; provenance is merged and an
  // existing concept keeps its label and kind. Throws invalid-argument when
  // the label normalizes to the empty string.
  ConceptId AddConcept(std::string_view label,
                       ConceptKind kind = ConceptKind::kObject,
                       const std::vector<Span> &provenance = {});
  void SetConceptKind(const ConceptId &id, ConceptKind kind);

  // Throws unknown-concept, invalid-argument (hierarchical self-loop or
  // confidence outside [0,1]) or CycleError. A duplicate triple keeps the max
  // confidence and the union of evidence.
  void AddRelation(const SemanticRelation &relation);

  // Throws unknown-concept / invalid-argument when the subject is missing or
  // the gloss is empty.
  void AddInterpretation(const Interpretation &interpretation);

  // Replaces an axiom with the same id.
  void AddAxiom(Axiom axiom);

  // Structural invariants plus every axiom. Pure.
  ValidationReport Validate() const;

  // Path from `from` to `to` over edges of `type`, empty if none.
  std::vector<ConceptId> FindPath(const ConceptId &from, const ConceptId &to,
                                  const RelationType &type) const;

  bool operator==(const Ontology &) const = default;

 private:
  Ontology() = default;

  std::string name_;
  OntologyKind kind_ = OntologyKind::kDomain;
  OntologyMeta meta_;
  std::map<ConceptId, Concept> concepts_;
  std::map<RelationKey, SemanticRelation> relations_;
  std::set<Interpretation> interpretations_;
  std::map<std::string, Axiom> axioms_;
};

// Sorted union helpers used wherever provenance or evidence is merged.
void MergeSpans(std::vector<Span> &into, const std::vector<Span> &from);
void MergeEvidence(std::vector<Evidence> &into, const std::vector<Evidence> &from);

// acyclic(is_a), acyclic(part_of), irreflexive(is_a).
std::vector<Axiom> DefaultAxioms();

}  // namespace ontoforge

#endif  // ONTOFORGE_ONTOLOGY_H_
