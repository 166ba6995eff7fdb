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

// Turns ranked terms into concepts and relations and assembles ontologies.

#ifndef ONTOFORGE_EXTRACTOR_H_
#define ONTOFORGE_EXTRACTOR_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/linguistic.h"
#include "ontoforge/ontology.h"

namespace ontoforge {

enum class Verdict { kAccept, kReject, kRename, kRetype };
enum class DecisionTarget { kTerm, kRelation };

std::string_view VerdictName(Verdict verdict);
Verdict ParseVerdict(std::string_view name);

// A knowledge engineer's verdict on a term or a relation triple.
struct CurationDecision {
  std::string id;  // assigned when persisted; orders same-iteration decisions
  DecisionTarget target_kind = DecisionTarget::kTerm;
  std::string term;          // kTerm: term text or lemma key
  std::string source;        // kRelation: concept labels and type tag
  std::string target;
  std::string rel_type;
  Verdict verdict = Verdict::kAccept;
  std::string new_label;     // kRename
  std::string new_kind;      // kRetype: concept kind or relation type tag
  std::string author;
  std::string at;
  int iteration = 0;

  // Identity of the decided target, e.g. "term:semantic network".
  std::string TargetKey() const;
  bool operator==(const CurationDecision &) const = default;
};

// Throws invalid-argument when required fields for the verdict are missing.
void CheckDecision(const CurationDecision &decision);

// Latest decision per target among those with iteration <= up_to; later
// entries win within one iteration. Keyed by TargetKey().
std::map<std::string, CurationDecision> EffectiveDecisions(
    const std::vector<CurationDecision> &decisions, int up_to_iteration);

struct ExtractionParams {
  size_t top_k_terms = 40;
  double pmi_threshold = 0.5;
  size_t min_pair_count = 2;
  std::vector<std::string> pattern_set;  // ids to use; empty means all
  std::vector<CurationDecision> decisions;
  int iteration = 0;  // decisions after this iteration are ignored
  double pattern_confidence = 0.9;
  double nesting_confidence = 0.7;
};

// Throws invalid-argument for top_k_terms or min_pair_count below 1.
void CheckParams(const ExtractionParams &params);

struct PromotedConcept {
  Concept node;
  std::vector<std::string> lemma_seq;
  bool operator==(const PromotedConcept &) const = default;
};

// Top-k by rank after decisions: rejected terms are skipped and replaced
// from further down, accepted terms bypass the cutoff, renames and retypes
// change label and kind. Output keeps rank order.
std::vector<PromotedConcept> PromoteConcepts(const std::vector<TermCandidate> &ranked,
                                             const ExtractionParams &params,
                                             const ProfileSet &profiles);

// "<id> TAB <template>" per line; the template is {X} or {Y}, one or more
// literal words, then the other placeholder. Yields is_a(Y -> X).
struct LexicalPattern {
  std::string id;
  std::string templ;
  std::vector<std::string> literals;  // case-folded words
  bool hypernym_first = true;         // {X} precedes the literals
  bool operator==(const LexicalPattern &) const = default;
};

std::vector<LexicalPattern> ParsePatterns(std::string_view text);
std::vector<LexicalPattern> LoadPatterns(const std::filesystem::path &path);

// Pattern matches (conf pattern_confidence, rule "pattern:<id>") and
// head-modifier nesting (conf nesting_confidence, rule "nesting"),
// duplicates merged by max confidence. Sorted by relation key.
std::vector<SemanticRelation> ExtractTaxonomic(
    const std::vector<TokenizedDoc> &docs,
    const std::vector<PromotedConcept> &concepts,
    const std::vector<LexicalPattern> &patterns, const ExtractionParams &params);

// ln(n_ab * total / (n_a * n_b)).
double Pmi(double n_ab, double n_a, double n_b, double total);

// Associative relations from corpus-wide co-occurrence counts. Pairs already
// linked by any relation in `taxonomic` are skipped.
std::vector<SemanticRelation> ExtractAssociative(
    const std::vector<TextGraph> &graphs,
    const std::vector<PromotedConcept> &concepts, const ExtractionParams &params,
    const std::vector<SemanticRelation> &taxonomic = {});

struct DictionarySource {
  std::string id;
  std::map<std::string, std::string> entries;  // normalized headword -> gloss

  // "headword TAB gloss" per line.
  static DictionarySource Parse(std::string id, std::string_view text);
  static DictionarySource Load(const std::filesystem::path &path);
};

std::vector<Interpretation> AttachInterpretations(
    const std::vector<PromotedConcept> &concepts,
    const std::vector<DictionarySource> &sources);

// Applies relation verdicts: reject drops the triple, retype changes its type.
// Triples are matched by the normalized labels of their endpoints.
std::vector<SemanticRelation> ApplyRelationDecisions(
    std::vector<SemanticRelation> relations,
    const std::vector<PromotedConcept> &concepts, const ExtractionParams &params);

struct BuildInputs {
  std::string name;
  OntologyMeta meta;
  std::vector<PromotedConcept> concepts;
  std::vector<SemanticRelation> relations;
  std::vector<Interpretation> interpretations;
};

struct BuildResult {
  Ontology ontology;
  std::vector<std::string> diagnostics;
};

// Relations are inserted by confidence descending, then (source, target,
// type); an edge that would close a hierarchical cycle is dropped with a
// diagnostic. Default axioms are installed.
//
// With `document` set, only that document's evidence is used: concepts
// mentioned in it, relations with evidence from it, and nesting relations
// between the kept concepts.
BuildResult BuildOntology(const BuildInputs &inputs,
                          const std::optional<std::string> &document = std::nullopt);

// The order in which BuildOntology and merges insert relations.
void SortForInsertion(std::vector<SemanticRelation> &relations);

}  // namespace ontoforge

#endif  // ONTOFORGE_EXTRACTOR_H_
