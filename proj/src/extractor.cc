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

#include "ontoforge/extractor.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace fs = std::filesystem;

namespace ontoforge {

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAccept: return "accept";
    case Verdict::kReject: return "reject";
    case Verdict::kRename: return "rename";
    case Verdict::kRetype: return "retype";
  }
  return "accept";
}

Verdict ParseVerdict(std::string_view name) {
  if (name == "accept") return Verdict::kAccept;
  if (name == "reject") return Verdict::kReject;
  if (name == "rename") return Verdict::kRename;
  if (name == "retype") return Verdict::kRetype;
  throw Error(ErrorCode::kInvalidArgument, "unknown verdict '" + std::string(name) + "'");
}

std::string CurationDecision::TargetKey() const {
  if (target_kind == DecisionTarget::kTerm) return "term:" + Normalize(term);
  return "relation:" + Normalize(source) + "|" + Normalize(target) + "|" + rel_type;
}

void CheckDecision(const CurationDecision &d) {
  if (d.target_kind == DecisionTarget::kTerm) {
    if (Normalize(d.term).empty()) {
      throw Error(ErrorCode::kInvalidArgument, "term decision without a term");
    }
  } else {
    if (Normalize(d.source).empty() || Normalize(d.target).empty() ||
        d.rel_type.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relation decision needs source, target and rel_type");
    }
    RelationType::FromTag(d.rel_type);
    if (d.verdict == Verdict::kRename) {
      throw Error(ErrorCode::kInvalidArgument, "relations cannot be renamed");
    }
  }
  if (d.verdict == Verdict::kRename && Normalize(d.new_label).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rename needs a new label");
  }
  if (d.verdict == Verdict::kRetype) {
    if (d.target_kind == DecisionTarget::kTerm) {
      ParseConceptKind(d.new_kind);
    } else {
      RelationType::FromTag(d.new_kind);
    }
  }
  if (d.iteration < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative decision iteration");
  }
}

std::map<std::string, CurationDecision> EffectiveDecisions(
    const std::vector<CurationDecision> &decisions, int up_to_iteration) {
  std::map<std::string, CurationDecision> out;
  std::map<std::string, int> seen_iteration;
  for (const CurationDecision &d : decisions) {
    if (d.iteration > up_to_iteration) continue;
    std::string key = d.TargetKey();
    auto it = seen_iteration.find(key);
    if (it != seen_iteration.end() && it->second > d.iteration) continue;
    seen_iteration[key] = d.iteration;
    out.insert_or_assign(key, d);
  }
  return out;
}

void CheckParams(const ExtractionParams &params) {
  if (params.top_k_terms < 1) {
    throw Error(ErrorCode::kInvalidArgument, "top_k_terms must be >= 1");
  }
  if (params.min_pair_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_pair_count must be >= 1");
  }
  for (double c : {params.pattern_confidence, params.nesting_confidence}) {
    if (!(c >= 0 && c <= 1)) {
      throw Error(ErrorCode::kInvalidArgument, "confidence constants must be in [0,1]");
    }
  }
}

namespace {

// Term decisions keyed by lemma key, so that "Semantic Networks" and
// "semantic network" address the same candidate.
std::map<std::string, CurationDecision> TermDecisionsByLemma(
    const std::vector<TermCandidate> &ranked, const ExtractionParams &params,
    const ProfileSet &profiles) {
  std::map<std::string, std::string> by_surface;
  for (const TermCandidate &c : ranked) by_surface.emplace(c.surface_example, c.key());
  std::map<std::string, CurationDecision> out;
  for (auto &[key, d] : EffectiveDecisions(params.decisions, params.iteration)) {
    if (d.target_kind != DecisionTarget::kTerm) continue;
    std::string normalized = Normalize(d.term);
    auto it = by_surface.find(normalized);
    std::string lemma_key;
    if (it != by_surface.end()) {
      lemma_key = it->second;
    } else if (!profiles.empty()) {
      lemma_key = LemmaKey(profiles.LemmaSequence(d.term));
    } else {
      lemma_key = normalized;
    }
    out.insert_or_assign(lemma_key, d);
  }
  return out;
}

ConceptKind GuessKind(const TermCandidate &c, const ProfileSet &profiles) {
  if (profiles.empty()) return ConceptKind::kObject;
  std::vector<std::string> words = WordTokens(c.surface_example);
  if (words.empty()) return ConceptKind::kObject;
  const std::string &head = words.back();
  return profiles.ForText(head).IsProcessWord(head) ? ConceptKind::kProcess
                                                    : ConceptKind::kObject;
}

}  // namespace

std::vector<PromotedConcept> PromoteConcepts(const std::vector<TermCandidate> &ranked,
                                             const ExtractionParams &params,
                                             const ProfileSet &profiles) {
  CheckParams(params);
  std::map<std::string, CurationDecision> decisions =
      TermDecisionsByLemma(ranked, params, profiles);

  std::vector<PromotedConcept> out;
  size_t taken = 0;
  for (const TermCandidate &c : ranked) {
    auto it = decisions.find(c.key());
    const CurationDecision *d = it == decisions.end() ? nullptr : &it->second;
    if (d && d->verdict == Verdict::kReject) continue;
    bool accepted = d && d->verdict == Verdict::kAccept;
    if (taken >= params.top_k_terms && !accepted) continue;
    if (taken < params.top_k_terms) ++taken;

    PromotedConcept p;
    p.lemma_seq = c.lemma_seq;
    std::string label = c.surface_example;
    if (d && d->verdict == Verdict::kRename) label = d->new_label;
    p.node.label = std::string(Trim(label));
    p.node.normalized_label = Normalize(label);
    p.node.id = ConceptId::FromNormalizedLabel(p.node.normalized_label);
    p.node.kind = d && d->verdict == Verdict::kRetype ? ParseConceptKind(d->new_kind)
                                                         : GuessKind(c, profiles);
    p.node.provenance = c.occurrences;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LexicalPattern> ParsePatterns(std::string_view text) {
  std::vector<LexicalPattern> out;
  std::set<std::string> ids;
  int line_no = 0;
  for (const std::string &raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t tab = raw.find('\t');
    if (tab == std::string::npos) throw ParseError("expected <id> TAB <template>", line_no, 1);
    LexicalPattern p;
    p.id = std::string(Trim(std::string_view(raw).substr(0, tab)));
    p.templ = std::string(Trim(std::string_view(raw).substr(tab + 1)));
    if (p.id.empty() || !ids.insert(p.id).second) {
      throw ParseError("missing or duplicate pattern id", line_no, 1);
    }
    size_t x = p.templ.find("{X}");
    size_t y = p.templ.find("{Y}");
    if (x == std::string::npos || y == std::string::npos) {
      throw ParseError("template needs both {X} and {Y}", line_no,
                       static_cast<int>(tab) + 2);
    }
    size_t first = std::min(x, y), second = std::max(x, y);
    if (Trim(std::string_view(p.templ).substr(0, first)).size() ||
        Trim(std::string_view(p.templ).substr(second + 3)).size()) {
      throw ParseError("placeholders must open and close the template", line_no,
                       static_cast<int>(tab) + 2);
    }
    p.hypernym_first = x < y;
    p.literals = WordTokens(std::string_view(p.templ).substr(first + 3, second - first - 3));
    if (p.literals.empty()) {
      throw ParseError("template needs literal words between placeholders", line_no,
                       static_cast<int>(tab) + 2);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LexicalPattern> LoadPatterns(const fs::path &path) {
  return ParsePatterns(ReadFile(path));
}

namespace {

struct ConceptMatcher {
  std::map<std::vector<std::string>, const PromotedConcept *> by_lemmas;
  size_t longest = 0;

  explicit ConceptMatcher(const std::vector<PromotedConcept> &concepts) {
    for (const PromotedConcept &c : concepts) {
      if (c.lemma_seq.empty()) continue;
      by_lemmas.emplace(c.lemma_seq, &c);
      longest = std::max(longest, c.lemma_seq.size());
    }
  }

  // Longest concept occupying norms[end - n, end).
  const PromotedConcept *EndingAt(const std::vector<Token> &s, size_t end) const {
    for (size_t n = std::min(longest, end); n >= 1; --n) {
      std::vector<std::string> seq;
      for (size_t k = end - n; k < end; ++k) seq.push_back(s[k].norm);
      auto it = by_lemmas.find(seq);
      if (it != by_lemmas.end()) return it->second;
    }
    return nullptr;
  }

  // Longest concept occupying norms[begin, begin + n).
  const PromotedConcept *StartingAt(const std::vector<Token> &s, size_t begin) const {
    for (size_t n = std::min(longest, s.size() - begin); n >= 1; --n) {
      std::vector<std::string> seq;
      for (size_t k = begin; k < begin + n; ++k) seq.push_back(s[k].norm);
      auto it = by_lemmas.find(seq);
      if (it != by_lemmas.end()) return it->second;
    }
    return nullptr;
  }
};

void AddMerged(std::map<RelationKey, SemanticRelation> &out, SemanticRelation r) {
  auto [it, inserted] = out.emplace(r.key(), r);
  if (!inserted) {
    it->second.confidence = std::max(it->second.confidence, r.confidence);
    MergeEvidence(it->second.evidence, r.evidence);
  }
}

std::vector<SemanticRelation> Values(std::map<RelationKey, SemanticRelation> &m) {
  std::vector<SemanticRelation> out;
  out.reserve(m.size());
  for (auto &[k, r] : m) {
    std::sort(r.evidence.begin(), r.evidence.end());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<SemanticRelation> ExtractTaxonomic(
    const std::vector<TokenizedDoc> &docs,
    const std::vector<PromotedConcept> &concepts,
    const std::vector<LexicalPattern> &patterns, const ExtractionParams &params) {
  CheckParams(params);
  std::map<RelationKey, SemanticRelation> out;
  if (concepts.empty()) return {};
  ConceptMatcher matcher(concepts);

  std::vector<const LexicalPattern *> active;
  for (const LexicalPattern &p : patterns) {
    if (params.pattern_set.empty() ||
        std::find(params.pattern_set.begin(), params.pattern_set.end(), p.id) !=
            params.pattern_set.end()) {
      active.push_back(&p);
    }
  }

  for (const TokenizedDoc &doc : docs) {
    for (size_t si = 0; si < doc.sentences.size(); ++si) {
      const std::vector<Token> &s = doc.sentences[si];
      std::vector<std::string> folded;
      for (const Token &t : s) folded.push_back(FoldCase(t.surface));
      for (const LexicalPattern *p : active) {
        const size_t n = p->literals.size();
        for (size_t i = 1; i + n < s.size(); ++i) {
          if (!std::equal(p->literals.begin(), p->literals.end(),
                          folded.begin() + static_cast<long>(i))) {
            continue;
          }
          const PromotedConcept *left = matcher.EndingAt(s, i);
          const PromotedConcept *right = matcher.StartingAt(s, i + n);
          if (!left || !right) continue;
          const PromotedConcept *hyper = p->hypernym_first ? left : right;
          const PromotedConcept *hypo = p->hypernym_first ? right : left;
          if (hyper->node.id == hypo->node.id) continue;
          AddMerged(out, SemanticRelation{hypo->node.id, hyper->node.id,
                                          RelationType::IsA(), params.pattern_confidence,
                                          {Evidence{doc.doc, static_cast<long>(si),
                                                    "pattern:" + p->id}}});
        }
      }
    }
  }

  for (const PromotedConcept &longer : concepts) {
    const auto &seq = longer.lemma_seq;
    for (size_t len = 1; len < seq.size(); ++len) {
      std::vector<std::string> suffix(seq.end() - static_cast<long>(len), seq.end());
      auto it = matcher.by_lemmas.find(suffix);
      if (it == matcher.by_lemmas.end()) continue;
      if (it->second->node.id == longer.node.id) continue;
      AddMerged(out, SemanticRelation{longer.node.id, it->second->node.id,
                                      RelationType::IsA(), params.nesting_confidence,
                                      {Evidence{"", -1, "nesting"}}});
    }
  }
  return Values(out);
}

double Pmi(double n_ab, double n_a, double n_b, double total) {
  return std::log(n_ab * total / (n_a * n_b));
}

std::vector<SemanticRelation> ExtractAssociative(
    const std::vector<TextGraph> &graphs,
    const std::vector<PromotedConcept> &concepts, const ExtractionParams &params,
    const std::vector<SemanticRelation> &taxonomic) {
  CheckParams(params);
  std::map<std::pair<std::string, std::string>, size_t> pair_counts;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> pair_docs;
  std::map<std::string, size_t> marginal;
  size_t total = 0;
  for (const TextGraph &g : graphs) {
    for (const auto &[pair, count] : g.edges) {
      pair_counts[pair] += count;
      pair_docs[pair].insert(g.doc);
      marginal[pair.first] += count;
      marginal[pair.second] += count;
      total += count;
    }
  }

  std::map<std::string, const PromotedConcept *> by_node;
  for (const PromotedConcept &c : concepts) by_node.emplace(LemmaKey(c.lemma_seq), &c);
  std::set<std::pair<ConceptId, ConceptId>> linked;
  for (const SemanticRelation &r : taxonomic) {
    linked.insert({std::min(r.source, r.target), std::max(r.source, r.target)});
  }

  const double log_total = std::log(static_cast<double>(total));
  std::map<RelationKey, SemanticRelation> out;
  for (const auto &[pair, count] : pair_counts) {
    if (count < params.min_pair_count) continue;
    auto a = by_node.find(pair.first);
    auto b = by_node.find(pair.second);
    if (a == by_node.end() || b == by_node.end()) continue;
    ConceptId ia = a->second->node.id, ib = b->second->node.id;
    if (ia == ib) continue;
    if (ib < ia) std::swap(ia, ib);
    if (linked.count({ia, ib})) continue;
    double pmi = Pmi(static_cast<double>(count), static_cast<double>(marginal[pair.first]),
                     static_cast<double>(marginal[pair.second]),
                     static_cast<double>(total));
    if (pmi < params.pmi_threshold) continue;
    double confidence = log_total > 0 ? std::clamp(pmi / log_total, 0.0, 1.0) : 0.0;
    SemanticRelation r{ia, ib, RelationType::AssociatedWith(), confidence, {}};
    for (const std::string &doc : pair_docs[pair]) r.evidence.push_back({doc, -1, "pmi"});
    AddMerged(out, std::move(r));
  }
  return Values(out);
}

DictionarySource DictionarySource::Parse(std::string id, std::string_view text) {
  DictionarySource d;
  d.id = std::move(id);
  int line_no = 0;
  for (const std::string &raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t tab = raw.find('\t');
    if (tab == std::string::npos) throw ParseError("expected headword TAB gloss", line_no, 1);
    std::string head = Normalize(std::string_view(raw).substr(0, tab));
    std::string gloss(Trim(std::string_view(raw).substr(tab + 1)));
    if (head.empty() || gloss.empty()) {
      throw ParseError("empty headword or gloss", line_no, 1);
    }
    d.entries.emplace(std::move(head), std::move(gloss));
  }
  return d;
}

DictionarySource DictionarySource::Load(const fs::path &path) {
  return Parse(path.stem().string(), ReadFile(path));
}

std::vector<Interpretation> AttachInterpretations(
    const std::vector<PromotedConcept> &concepts,
    const std::vector<DictionarySource> &sources) {
  std::vector<Interpretation> out;
  for (const PromotedConcept &c : concepts) {
    for (const DictionarySource &src : sources) {
      auto it = src.entries.find(c.node.normalized_label);
      if (it == src.entries.end()) continue;
      out.push_back(Interpretation{SubjectKind::kConcept, c.node.id.value, it->second,
                                   src.id});
    }
  }
  return out;
}

std::vector<SemanticRelation> ApplyRelationDecisions(
    std::vector<SemanticRelation> relations,
    const std::vector<PromotedConcept> &concepts, const ExtractionParams &params) {
  std::map<ConceptId, std::string> label;
  for (const PromotedConcept &c : concepts) label.emplace(c.node.id, c.node.normalized_label);
  auto effective = EffectiveDecisions(params.decisions, params.iteration);

  std::map<RelationKey, SemanticRelation> out;
  for (SemanticRelation &r : relations) {
    CurationDecision probe;
    probe.target_kind = DecisionTarget::kRelation;
    probe.source = label.count(r.source) ? label[r.source] : r.source.value;
    probe.target = label.count(r.target) ? label[r.target] : r.target.value;
    probe.rel_type = r.type.tag();
    auto it = effective.find(probe.TargetKey());
    if (it != effective.end()) {
      if (it->second.verdict == Verdict::kReject) continue;
      if (it->second.verdict == Verdict::kRetype) {
        r.type = RelationType::FromTag(it->second.new_kind);
        if (r.type.hierarchical() && r.source == r.target) continue;
      }
    }
    AddMerged(out, std::move(r));
  }
  return Values(out);
}

void SortForInsertion(std::vector<SemanticRelation> &relations) {
  std::sort(relations.begin(), relations.end(),
            [](const SemanticRelation &a, const SemanticRelation &b) {
              if (a.confidence != b.confidence) return a.confidence > b.confidence;
              return a.key() < b.key();
            });
}

BuildResult BuildOntology(const BuildInputs &inputs,
                          const std::optional<std::string> &document) {
  BuildResult result{Ontology::Create(inputs.name,
                                      document ? OntologyKind::kDocument
                                               : OntologyKind::kDomain,
                                      inputs.meta),
                     {}};
  Ontology &o = result.ontology;

  for (const PromotedConcept &p : inputs.concepts) {
    std::vector<Span> spans;
    for (const Span &s : p.node.provenance) {
      if (!document || s.doc == *document) spans.push_back(s);
    }
    if (document && spans.empty()) continue;
    try {
      ConceptId id = o.AddConcept(p.node.label, p.node.kind, spans);
      if (id != p.node.id) {
        result.diagnostics.push_back("concept id mismatch for '" + p.node.label + "'");
      }
    } catch (const Error &e) {
      result.diagnostics.push_back("dropped concept '" + p.node.label + "': " + e.what());
    }
  }

  std::vector<SemanticRelation> relations;
  for (const SemanticRelation &r : inputs.relations) {
    SemanticRelation copy = r;
    if (document) {
      copy.evidence.clear();
      bool corpus_level = false;
      for (const Evidence &e : r.evidence) {
        if (e.doc == *document) copy.evidence.push_back(e);
        if (e.doc.empty()) {
          copy.evidence.push_back(e);
          corpus_level = true;
        }
      }
      if (copy.evidence.empty() && !corpus_level) continue;
    }
    relations.push_back(std::move(copy));
  }
  SortForInsertion(relations);
  for (const SemanticRelation &r : relations) {
    if (!o.FindConcept(r.source) || !o.FindConcept(r.target)) {
      if (!document) {
        result.diagnostics.push_back("dropped " + r.type.tag() + " " + r.source.value +
                                     " -> " + r.target.value + ": endpoint not promoted");
      }
      continue;
    }
    try {
      o.AddRelation(r);
    } catch (const Error &e) {
      result.diagnostics.push_back("dropped " + r.type.tag() + " " + r.source.value +
                                   " -> " + r.target.value + ": " + e.what());
    }
  }

  for (const Interpretation &i : inputs.interpretations) {
    if (i.subject_kind == SubjectKind::kConcept && !o.FindConcept(ConceptId{i.subject})) {
      continue;
    }
    try {
      o.AddInterpretation(i);
    } catch (const Error &e) {
      result.diagnostics.push_back(std::string("dropped interpretation: ") + e.what());
    }
  }
  for (Axiom &a : DefaultAxioms()) o.AddAxiom(std::move(a));
  return result;
}

}  // namespace ontoforge
