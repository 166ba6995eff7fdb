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

#include "ontoforge/integration.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "ontoforge/error.h"
#include "ontoforge/extractor.h"
#include "ontoforge/text.h"

namespace ontoforge {

std::string_view AlignMethodName(AlignMethod method) {
  switch (method) {
    case AlignMethod::kExact: return "exact";
    case AlignMethod::kNormalized: return "normalized";
    case AlignMethod::kTokenOverlap: return "token_overlap";
  }
  return "exact";
}

AlignmentMap AlignmentMap::Inverse() const {
  AlignmentMap inv;
  for (const AlignedPair &p : pairs) {
    inv.pairs.push_back({p.right, p.left, p.similarity, p.method});
  }
  return inv;
}

namespace {

std::set<std::string> LemmaSet(const Concept &c, const ProfileSet &profiles) {
  if (profiles.empty()) {
    std::vector<std::string> words = WordTokens(c.normalized_label);
    return {words.begin(), words.end()};
  }
  std::vector<std::string> lemmas = profiles.LemmaSequence(c.normalized_label);
  return {lemmas.begin(), lemmas.end()};
}

double Jaccard(const std::set<std::string> &a, const std::set<std::string> &b) {
  if (a.empty() && b.empty()) return 0;
  size_t common = 0;
  for (const std::string &x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

}  // namespace

double LabelSimilarity(const Concept &a, const Concept &b, const ProfileSet &profiles,
                       AlignMethod *method) {
  AlignMethod m = AlignMethod::kTokenOverlap;
  double sim;
  if (a.label == b.label) {
    m = AlignMethod::kExact;
    sim = 1.0;
  } else if (a.normalized_label == b.normalized_label) {
    m = AlignMethod::kNormalized;
    sim = 1.0;
  } else {
    sim = Jaccard(LemmaSet(a, profiles), LemmaSet(b, profiles));
  }
  if (method) *method = m;
  return sim;
}

AlignmentMap Align(const Ontology &left, const Ontology &right, double threshold,
                   const ProfileSet &profiles) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alignment threshold must be in (0,1]");
  }
  std::map<ConceptId, std::set<std::string>> right_lemmas;
  for (const auto &[id, c] : right.concepts()) right_lemmas[id] = LemmaSet(c, profiles);

  std::vector<AlignedPair> candidates;
  for (const auto &[lid, lc] : left.concepts()) {
    std::set<std::string> ll = LemmaSet(lc, profiles);
    for (const auto &[rid, rc] : right.concepts()) {
      AlignedPair p{lid, rid, 0, AlignMethod::kTokenOverlap};
      if (lc.label == rc.label) {
        p.similarity = 1.0;
        p.method = AlignMethod::kExact;
      } else if (lc.normalized_label == rc.normalized_label) {
        p.similarity = 1.0;
        p.method = AlignMethod::kNormalized;
      } else {
        p.similarity = Jaccard(ll, right_lemmas[rid]);
      }
      if (p.similarity >= threshold) candidates.push_back(std::move(p));
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto &a, const auto &b) {
    return std::tie(b.similarity, a.method, a.left, a.right) <
           std::tie(a.similarity, b.method, b.left, b.right);
  });

  AlignmentMap out;
  std::set<ConceptId> used_left, used_right;
  for (AlignedPair &p : candidates) {
    if (used_left.count(p.left) || used_right.count(p.right)) continue;
    used_left.insert(p.left);
    used_right.insert(p.right);
    out.pairs.push_back(std::move(p));
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const auto &a, const auto &b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  });
  return out;
}

MergeResult Merge(const Ontology &left, const Ontology &right,
                  const AlignmentMap &alignment) {
  std::map<ConceptId, ConceptId> right_to_merged;
  std::set<ConceptId> aligned_left;
  for (const AlignedPair &p : alignment.pairs) {
    if (!left.FindConcept(p.left) || !right.FindConcept(p.right)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "alignment names a concept absent from its ontology: " + p.left.value +
                      " / " + p.right.value);
    }
    if (!aligned_left.insert(p.left).second ||
        !right_to_merged.emplace(p.right, p.left).second) {
      throw Error(ErrorCode::kInvalidArgument, "alignment is not one-to-one");
    }
  }

  std::string name = left.name() == right.name() ? left.name()
                                                  : left.name() + "+" + right.name();
  MergeResult result{Ontology::Create(name, OntologyKind::kIntegrated, left.meta()), {}};
  std::vector<Concept> concepts;
  std::map<ConceptId, size_t> index;
  for (const auto &[id, c] : left.concepts()) {
    index.emplace(id, concepts.size());
    concepts.push_back(c);
  }
  for (const auto &[id, c] : right.concepts()) {
    auto mapped = right_to_merged.find(id);
    if (mapped != right_to_merged.end()) {
      MergeSpans(concepts[index.at(mapped->second)].provenance, c.provenance);
      continue;
    }
    auto clash = index.find(id);
    if (clash != index.end()) {
      // Same normalized label left unaligned; there can only be one concept.
      result.diagnostics.push_back("unaligned concept " + id.value +
                                   " collides with the left ontology; merged");
      MergeSpans(concepts[clash->second].provenance, c.provenance);
      right_to_merged.emplace(id, id);
      continue;
    }
    right_to_merged.emplace(id, id);
    index.emplace(id, concepts.size());
    concepts.push_back(c);
  }
  Ontology &o = result.ontology;
  for (const Concept &c : concepts) o.AddConcept(c.label, c.kind, c.provenance);

  auto map_right = [&](const ConceptId &id) { return right_to_merged.at(id); };

  std::map<RelationKey, SemanticRelation> relations;
  auto add = [&](SemanticRelation r) {
    auto [it, inserted] = relations.emplace(r.key(), r);
    if (!inserted) {
      it->second.confidence = std::max(it->second.confidence, r.confidence);
      MergeEvidence(it->second.evidence, r.evidence);
    }
  };
  for (const auto &[k, r] : left.relations()) add(r);
  for (const auto &[k, r] : right.relations()) {
    SemanticRelation copy = r;
    copy.source = map_right(r.source);
    copy.target = map_right(r.target);
    add(std::move(copy));
  }
  std::vector<SemanticRelation> ordered;
  for (auto &[k, r] : relations) ordered.push_back(std::move(r));
  SortForInsertion(ordered);
  for (const SemanticRelation &r : ordered) {
    try {
      o.AddRelation(r);
    } catch (const Error &e) {
      result.diagnostics.push_back("dropped " + r.type.tag() + " " + r.source.value +
                                   " -> " + r.target.value + ": " + e.what());
    }
  }

  auto add_interpretation = [&](Interpretation i) {
    try {
      o.AddInterpretation(i);
    } catch (const Error &e) {
      result.diagnostics.push_back(std::string("dropped interpretation: ") + e.what());
    }
  };
  for (const Interpretation &i : left.interpretations()) add_interpretation(i);
  for (Interpretation i : right.interpretations()) {
    if (i.subject_kind == SubjectKind::kConcept) {
      i.subject = map_right(ConceptId{i.subject}).value;
    }
    add_interpretation(std::move(i));
  }

  for (const auto &[id, a] : left.axioms()) o.AddAxiom(a);
  for (const auto &[id, a] : right.axioms()) {
    Axiom copy = a;
    auto remap = [&](const std::set<ConceptId> &ids) {
      std::set<ConceptId> out;
      for (const ConceptId &c : ids) {
        auto it = right_to_merged.find(c);
        out.insert(it == right_to_merged.end() ? c : it->second);
      }
      return out;
    };
    if (auto *dj = std::get_if<DisjointAxiom>(&copy.body)) dj->members = remap(dj->members);
    if (copy.scope) copy.scope = remap(*copy.scope);
    auto existing = left.axioms().find(id);
    if (existing != left.axioms().end()) {
      if (!(existing->second == copy)) {
        result.diagnostics.push_back("axiom " + id + " differs between inputs; kept left");
      }
      continue;
    }
    o.AddAxiom(std::move(copy));
  }
  return result;
}

namespace {

struct LabelView {
  std::map<std::string, std::string> kinds;
  std::set<std::tuple<std::string, std::string, std::string>> edges;
  std::set<std::tuple<std::string, std::string, std::string>> glosses;
};

LabelView ViewByLabel(const Ontology &o) {
  LabelView v;
  auto label = [&](const ConceptId &id) { return o.concepts().at(id).normalized_label; };
  for (const auto &[id, c] : o.concepts()) {
    v.kinds[c.normalized_label] = std::string(ConceptKindName(c.kind));
  }
  for (const auto &[k, r] : o.relations()) {
    v.edges.insert({label(k.source), label(k.target), k.type.tag()});
  }
  for (const Interpretation &i : o.interpretations()) {
    std::string subject = i.subject_kind == SubjectKind::kConcept
                              ? label(ConceptId{i.subject})
                              : "type:" + i.subject;
    v.glosses.insert({subject, i.source, i.gloss});
  }
  return v;
}

}  // namespace

bool IsomorphicByLabel(const Ontology &a, const Ontology &b) {
  LabelView va = ViewByLabel(a), vb = ViewByLabel(b);
  return va.kinds == vb.kinds && va.edges == vb.edges && va.glosses == vb.glosses;
}

}  // namespace ontoforge
