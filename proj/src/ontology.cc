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

#include "ontoforge/ontology.h"

#include <algorithm>
#include <deque>

#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace ontoforge {

std::string_view ConceptKindName(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::kObject: return "object";
    case ConceptKind::kProcess: return "process";
    case ConceptKind::kTask: return "task";
  }
  return "object";
}

ConceptKind ParseConceptKind(std::string_view name) {
  if (name == "object") return ConceptKind::kObject;
  if (name == "process") return ConceptKind::kProcess;
  if (name == "task") return ConceptKind::kTask;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown concept kind '" + std::string(name) + "'");
}

std::string_view OntologyKindName(OntologyKind kind) {
  switch (kind) {
    case OntologyKind::kDocument: return "document";
    case OntologyKind::kDomain: return "domain";
    case OntologyKind::kIntegrated: return "integrated";
  }
  return "domain";
}

OntologyKind ParseOntologyKind(std::string_view name) {
  if (name == "document") return OntologyKind::kDocument;
  if (name == "domain") return OntologyKind::kDomain;
  if (name == "integrated") return OntologyKind::kIntegrated;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown ontology kind '" + std::string(name) + "'");
}

ConceptId ConceptId::FromNormalizedLabel(std::string_view normalized) {
  std::string slug = Slug(normalized);
  if (slug.empty()) slug = "c";
  return ConceptId{slug + "-" + Sha256Hex(normalized).substr(0, 8)};
}

RelationType RelationType::FromTag(std::string_view tag) {
  if (tag.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty relation type tag");
  }
  for (char c : tag) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
              c == '-';
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relation type tag must match [a-z0-9_-]+: '" +
                      std::string(tag) + "'");
    }
  }
  return RelationType(std::string(tag));
}

void MergeSpans(std::vector<Span> &into, const std::vector<Span> &from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

void MergeEvidence(std::vector<Evidence> &into,
                   const std::vector<Evidence> &from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

std::vector<Axiom> DefaultAxioms() {
  return {
      Axiom{"acyclic-is_a", AxiomForm::kConstraint,
            AcyclicAxiom{RelationType::IsA()}, std::nullopt},
      Axiom{"acyclic-part_of", AxiomForm::kConstraint,
            AcyclicAxiom{RelationType::PartOf()}, std::nullopt},
      Axiom{"irreflexive-is_a", AxiomForm::kConstraint,
            IrreflexiveAxiom{RelationType::IsA()}, std::nullopt},
  };
}

Ontology Ontology::Create(std::string name, OntologyKind kind,
                          OntologyMeta meta) {
  Ontology o;
  o.set_name(std::move(name));
  o.kind_ = kind;
  o.meta_ = std::move(meta);
  return o;
}

void Ontology::set_name(std::string name) {
  if (name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ontology name must not be empty");
  }
  name_ = std::move(name);
}

Ontology Ontology::FromParts(std::string name, OntologyKind kind,
                             OntologyMeta meta, std::vector<Concept> concepts,
                             std::vector<SemanticRelation> relations,
                             std::vector<Interpretation> interpretations,
                             std::vector<Axiom> axioms) {
  Ontology o = Create(std::move(name), kind, std::move(meta));
  std::vector<std::string> problems;
  for (Concept &c : concepts) {
    ConceptId id = c.id;
    if (!o.concepts_.emplace(id, std::move(c)).second) {
      problems.push_back("duplicate concept " + id.value);
    }
  }
  for (SemanticRelation &r : relations) {
    RelationKey key = r.key();
    if (!o.relations_.emplace(key, std::move(r)).second) {
      problems.push_back("duplicate relation " + key.source.value + " -" +
                         key.type.tag() + "-> " + key.target.value);
    }
  }
  for (Interpretation &i : interpretations) {
    o.interpretations_.insert(std::move(i));
  }
  for (Axiom &a : axioms) {
    std::string id = a.id;
    if (!o.axioms_.emplace(id, std::move(a)).second) {
      problems.push_back("duplicate axiom " + id);
    }
  }
  for (const Violation &v : o.Validate().violations) {
    if (v.axiom_id.rfind("structural:", 0) == 0) {
      problems.push_back(v.axiom_id + ": " + v.message);
    }
  }
  if (!problems.empty()) {
    throw Error(ErrorCode::kValidationError,
                "ontology violates structural invariants: " + problems.front(),
                problems);
  }
  return o;
}

const Concept *Ontology::FindConcept(const ConceptId &id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const Concept *Ontology::FindByLabel(std::string_view label) const {
  std::string normalized = Normalize(label);
  if (normalized.empty()) return nullptr;
  return FindConcept(ConceptId::FromNormalizedLabel(normalized));
}

ConceptId Ontology::AddConcept(std::string_view label, ConceptKind kind,
                               const std::vector<Span> &provenance) {
  std::string normalized = Normalize(label);
  if (normalized.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "concept label is empty after normalization");
  }
  ConceptId id = ConceptId::FromNormalizedLabel(normalized);
  auto it = concepts_.find(id);
  if (it != concepts_.end()) {
    MergeSpans(it->second.provenance, provenance);
    return id;
  }
  Concept c;
  c.id = id;
  c.label = std::string(Trim(label));
  c.normalized_label = std::move(normalized);
  c.kind = kind;
  MergeSpans(c.provenance, provenance);
  concepts_.emplace(id, std::move(c));
  return id;
}

void Ontology::SetConceptKind(const ConceptId &id, ConceptKind kind) {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) {
    throw Error(ErrorCode::kUnknownConcept, "unknown concept " + id.value);
  }
  it->second.kind = kind;
}

std::vector<ConceptId> Ontology::FindPath(const ConceptId &from,
                                          const ConceptId &to,
                                          const RelationType &type) const {
  std::map<ConceptId, ConceptId> parent;
  std::deque<ConceptId> queue{from};
  parent.emplace(from, from);
  while (!queue.empty()) {
    ConceptId node = queue.front();
    queue.pop_front();
    if (node == to) {
      std::vector<ConceptId> path{to};
      while (path.back() != from) path.push_back(parent.at(path.back()));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto it = relations_.lower_bound({node, ConceptId{}, type});
         it != relations_.end() && it->first.source == node; ++it) {
      if (it->first.type != type) continue;
      if (parent.emplace(it->first.target, node).second) {
        queue.push_back(it->first.target);
      }
    }
  }
  return {};
}

void Ontology::AddRelation(const SemanticRelation &relation) {
  const Concept *source = FindConcept(relation.source);
  const Concept *target = FindConcept(relation.target);
  if (source == nullptr || target == nullptr) {
    throw Error(ErrorCode::kUnknownConcept,
                "relation endpoint not in ontology: " +
                    (source == nullptr ? relation.source : relation.target).value);
  }
  if (!(relation.confidence >= 0.0 && relation.confidence <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "confidence outside [0,1]: " + FormatDouble(relation.confidence));
  }
  if (relation.type.hierarchical() && relation.source == relation.target) {
    throw Error(ErrorCode::kInvalidArgument,
                relation.type.tag() + " self-loop on " + relation.source.value);
  }

  auto existing = relations_.find(relation.key());
  if (existing != relations_.end()) {
    existing->second.confidence =
        std::max(existing->second.confidence, relation.confidence);
    MergeEvidence(existing->second.evidence, relation.evidence);
    return;
  }

  if (relation.type.hierarchical()) {
    std::vector<ConceptId> back =
        FindPath(relation.target, relation.source, relation.type);
    if (!back.empty()) {
      std::vector<std::string> path{relation.source.value};
      for (size_t i = 0; i + 1 < back.size(); ++i) path.push_back(back[i].value);
      throw CycleError(relation.type.tag() + " edge " + relation.source.value +
                           " -> " + relation.target.value +
                           " closes a cycle through " + Join(path, " -> "),
                       path);
    }
  }

  SemanticRelation stored = relation;
  stored.evidence.clear();
  MergeEvidence(stored.evidence, relation.evidence);
  relations_.emplace(stored.key(), std::move(stored));
}

void Ontology::AddInterpretation(const Interpretation &interpretation) {
  if (interpretation.gloss.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "interpretation gloss is empty");
  }
  if (interpretation.subject_kind == SubjectKind::kConcept) {
    if (!FindConcept(ConceptId{interpretation.subject})) {
      throw Error(ErrorCode::kUnknownConcept,
                  "interpretation subject not in ontology: " +
                      interpretation.subject);
    }
  } else {
    bool used = std::any_of(relations_.begin(), relations_.end(), [&](auto &r) {
      return r.first.type.tag() == interpretation.subject;
    });
    if (!used) {
      throw Error(ErrorCode::kUnknownConcept,
                  "no relation of type " + interpretation.subject);
    }
  }
  // One record per (subject, gloss); a second source repeating a gloss adds
  // nothing.
  auto it = interpretations_.lower_bound(Interpretation{
      interpretation.subject_kind, interpretation.subject, interpretation.gloss, ""});
  if (it != interpretations_.end() && it->subject_kind == interpretation.subject_kind &&
      it->subject == interpretation.subject && it->gloss == interpretation.gloss) {
    return;
  }
  interpretations_.insert(interpretation);
}

void Ontology::AddAxiom(Axiom axiom) {
  if (axiom.id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "axiom id must not be empty");
  }
  std::string id = axiom.id;
  axioms_.insert_or_assign(std::move(id), std::move(axiom));
}

namespace {

std::string EdgeName(const RelationKey &k) {
  return k.source.value + " -" + k.type.tag() + "-> " + k.target.value;
}

bool InScope(const std::optional<std::set<ConceptId>> &scope,
             const ConceptId &id) {
  return !scope || scope->count(id) > 0;
}

// Nodes left over after Kahn's algorithm on the `type` subgraph; empty iff
// the subgraph is acyclic.
std::vector<std::string> CyclicNodes(
    const std::map<RelationKey, SemanticRelation> &relations,
    const RelationType &type, const std::optional<std::set<ConceptId>> &scope) {
  std::map<ConceptId, int> indegree;
  std::map<ConceptId, std::vector<ConceptId>> out;
  for (const auto &[key, rel] : relations) {
    if (key.type != type || !InScope(scope, key.source) ||
        !InScope(scope, key.target)) {
      continue;
    }
    indegree[key.source];
    ++indegree[key.target];
    out[key.source].push_back(key.target);
  }
  std::deque<ConceptId> ready;
  for (const auto &[node, deg] : indegree) {
    if (deg == 0) ready.push_back(node);
  }
  while (!ready.empty()) {
    ConceptId node = ready.front();
    ready.pop_front();
    for (const ConceptId &next : out[node]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  std::vector<std::string> left;
  for (const auto &[node, deg] : indegree) {
    if (deg > 0) left.push_back(node.value);
  }
  return left;
}

}  // namespace

ValidationReport Ontology::Validate() const {
  std::vector<Violation> out;
  auto structural = [&](std::string rule, std::vector<std::string> elements,
                        std::string message) {
    out.push_back({"structural:" + std::move(rule), std::move(elements),
                   std::move(message)});
  };

  std::set<std::string> normalized_seen;
  for (const auto &[id, c] : concepts_) {
    if (c.normalized_label.empty() || c.normalized_label != Normalize(c.label)) {
      structural("normalized-label", {id.value},
                 "normalized label does not match label");
    } else if (ConceptId::FromNormalizedLabel(c.normalized_label) != id) {
      structural("concept-id", {id.value},
                 "id is not derived from the normalized label");
    }
    if (!normalized_seen.insert(c.normalized_label).second) {
      structural("unique-label", {id.value},
                 "normalized label used by more than one concept");
    }
  }

  std::set<std::string> types_in_use;
  for (const auto &[key, rel] : relations_) {
    types_in_use.insert(key.type.tag());
    if (!FindConcept(key.source) || !FindConcept(key.target)) {
      structural("referential-integrity", {EdgeName(key)},
                 "relation endpoint missing from concepts");
    }
    if (key.type.hierarchical() && key.source == key.target) {
      structural("self-loop", {EdgeName(key)}, "hierarchical self-loop");
    }
    if (!(rel.confidence >= 0.0 && rel.confidence <= 1.0)) {
      structural("confidence", {EdgeName(key)}, "confidence outside [0,1]");
    }
  }
  for (const RelationType &type : {RelationType::IsA(), RelationType::PartOf()}) {
    std::vector<std::string> cyclic = CyclicNodes(relations_, type, std::nullopt);
    if (!cyclic.empty()) {
      structural("acyclic-" + type.tag(), cyclic,
                 type.tag() + " subgraph contains a cycle through " +
                     Join(cyclic, ", "));
    }
  }
  const Interpretation *previous = nullptr;
  for (const Interpretation &i : interpretations_) {
    bool resolves = i.subject_kind == SubjectKind::kConcept
                        ? FindConcept(ConceptId{i.subject}) != nullptr
                        : types_in_use.count(i.subject) > 0;
    if (!resolves) {
      structural("referential-integrity", {i.subject},
                 "interpretation subject missing from ontology");
    }
    if (i.gloss.empty()) {
      structural("gloss", {i.subject}, "empty gloss");
    }
    if (previous && previous->subject_kind == i.subject_kind &&
        previous->subject == i.subject && previous->gloss == i.gloss) {
      structural("duplicate-gloss", {i.subject}, "gloss repeated for one subject");
    }
    previous = &i;
  }

  for (const auto &[axiom_id, axiom] : axioms_) {
    const auto &scope = axiom.scope;
    if (const auto *dr = std::get_if<DomainRangeAxiom>(&axiom.body)) {
      for (const auto &[key, rel] : relations_) {
        if (key.type != dr->type || !InScope(scope, key.source) ||
            !InScope(scope, key.target)) {
          continue;
        }
        const Concept *s = FindConcept(key.source);
        const Concept *t = FindConcept(key.target);
        if (s && t && (s->kind != dr->source_kind || t->kind != dr->target_kind)) {
          out.push_back({axiom_id, {EdgeName(key)},
                         "edge kinds " + std::string(ConceptKindName(s->kind)) +
                             " -> " + std::string(ConceptKindName(t->kind)) +
                             " outside domain/range"});
        }
      }
    } else if (const auto *dj = std::get_if<DisjointAxiom>(&axiom.body)) {
      for (const auto &[id, c] : concepts_) {
        if (!InScope(scope, id)) continue;
        // Ancestors-or-self along is_a.
        std::set<ConceptId> seen{id};
        std::deque<ConceptId> queue{id};
        while (!queue.empty()) {
          ConceptId node = queue.front();
          queue.pop_front();
          for (auto it = relations_.lower_bound({node, ConceptId{}, RelationType::IsA()});
               it != relations_.end() && it->first.source == node; ++it) {
            if (it->first.type.tag() == "is_a" && seen.insert(it->first.target).second) {
              queue.push_back(it->first.target);
            }
          }
        }
        std::vector<std::string> hits{id.value};
        for (const ConceptId &m : dj->members) {
          if (seen.count(m)) hits.push_back(m.value);
        }
        if (hits.size() > 2) {
          out.push_back({axiom_id, hits, "concept falls under disjoint members"});
        }
      }
    } else if (const auto *ir = std::get_if<IrreflexiveAxiom>(&axiom.body)) {
      for (const auto &[key, rel] : relations_) {
        if (key.type == ir->type && key.source == key.target &&
            InScope(scope, key.source)) {
          out.push_back({axiom_id, {EdgeName(key)}, "reflexive edge"});
        }
      }
    } else if (const auto *ac = std::get_if<AcyclicAxiom>(&axiom.body)) {
      std::vector<std::string> cyclic = CyclicNodes(relations_, ac->type, scope);
      if (!cyclic.empty()) {
        out.push_back({axiom_id, cyclic,
                       ac->type.tag() + " subgraph contains a cycle"});
      }
    }
  }

  std::sort(out.begin(), out.end());
  return ValidationReport{std::move(out)};
}

}  // namespace ontoforge
