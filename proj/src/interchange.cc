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

#include "ontoforge/interchange.h"

#include <algorithm>
#include <cstdio>

#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace ontoforge {

std::string_view PayloadTypeName(PayloadType type) {
  switch (type) {
    case PayloadType::kOntology: return "ontology";
    case PayloadType::kCandidates: return "candidates";
    case PayloadType::kDecisions: return "decisions";
    case PayloadType::kCorpusManifest: return "corpus-manifest";
    case PayloadType::kReport: return "report";
    case PayloadType::kTokenizedCorpus: return "tokenized-corpus";
    case PayloadType::kTextGraphs: return "text-graphs";
  }
  return "report";
}

PayloadType ParsePayloadType(std::string_view name) {
  for (PayloadType t :
       {PayloadType::kOntology, PayloadType::kCandidates, PayloadType::kDecisions,
        PayloadType::kCorpusManifest, PayloadType::kReport,
        PayloadType::kTokenizedCorpus, PayloadType::kTextGraphs}) {
    if (PayloadTypeName(t) == name) return t;
  }
  throw ParseError("unknown payload type '" + std::string(name) + "'", 1, 1);
}

namespace {

// The payload element exactly as it appears inside an envelope, without the
// leading indentation and trailing newline.
std::string CanonicalPayload(const XmlElement &payload) {
  std::string text = WriteXmlElement(payload, 1);
  return text.substr(2, text.size() - 3);
}

std::string Padded(size_t n, int width = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, n);
  return buf;
}

[[noreturn]] void SchemaFail(const XmlElement &at, const std::string &message) {
  throw ParseError(message, at.line, at.column);
}

size_t UIntAttr(const XmlElement &e, std::string_view key) {
  try {
    long long v = ParseInt(e.Require(key));
    if (v < 0) SchemaFail(e, "negative value for '" + std::string(key) + "'");
    return static_cast<size_t>(v);
  } catch (const ParseError &) {
    throw;
  } catch (const Error &err) {
    SchemaFail(e, err.what());
  }
}

long IntAttr(const XmlElement &e, std::string_view key) {
  try {
    return static_cast<long>(ParseInt(e.Require(key)));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &err) {
    SchemaFail(e, err.what());
  }
}

double DoubleAttr(const XmlElement &e, std::string_view key) {
  try {
    return ParseDouble(e.Require(key));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &err) {
    SchemaFail(e, err.what());
  }
}

// Runs a conversion that may throw a plain Error (bad enum value etc.) and
// reports it at the element's position.
template <typename F>
auto At(const XmlElement &e, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError &) {
    throw;
  } catch (const Error &err) {
    SchemaFail(e, err.what());
  }
}

const XmlElement &Payload(const Envelope &env, PayloadType want) {
  if (env.type != want) {
    SchemaFail(env.payload, "expected a " + std::string(PayloadTypeName(want)) +
                                " payload, found " + std::string(PayloadTypeName(env.type)));
  }
  return env.payload;
}

}  // namespace

std::string WriteEnvelope(const XmlElement &payload, PayloadType type,
                          std::string_view producer) {
  if (payload.name != PayloadTypeName(type)) {
    throw Error(ErrorCode::kInvalidArgument, "payload element does not match its type");
  }
  XmlElement env("envelope");
  env.Set("schema-version", std::string(kSchemaVersion));
  env.Set("producer", std::string(producer));
  env.Set("payload-type", std::string(PayloadTypeName(type)));
  env.Set("checksum", Sha256Hex(CanonicalPayload(payload)));
  env.children.push_back(payload);
  return WriteXmlDocument(env);
}

Envelope ReadEnvelope(std::string_view bytes) {
  XmlElement root = ParseXml(bytes);
  if (root.name != "envelope") SchemaFail(root, "document element is not <envelope>");
  Envelope env;
  env.schema_version = root.Require("schema-version");
  if (env.schema_version != kSchemaVersion) {
    SchemaFail(root, "unsupported schema version '" + env.schema_version + "'");
  }
  env.producer = root.Require("producer");
  env.checksum = root.Require("checksum");
  const std::string &type_name = root.Require("payload-type");
  if (root.children.size() != 1) SchemaFail(root, "envelope must hold exactly one payload");
  if (!Trim(root.text).empty()) SchemaFail(root, "text outside the payload");
  const XmlElement &payload = root.children.front();
  std::string_view raw =
      bytes.substr(payload.begin_offset, payload.end_offset - payload.begin_offset);
  if (Sha256Hex(raw) != env.checksum) {
    throw Error(ErrorCode::kIntegrityError,
                "payload checksum mismatch (expected " + env.checksum + ")");
  }
  try {
    env.type = ParsePayloadType(type_name);
  } catch (const ParseError &) {
    SchemaFail(root, "unknown payload type '" + type_name + "'");
  }
  if (payload.name != type_name) {
    SchemaFail(payload, "payload element <" + payload.name + "> does not match payload-type");
  }
  env.payload = payload;
  return env;
}

// ---------------------------------------------------------------------------
// Ontology

namespace {

XmlElement AxiomToXml(const Axiom &a) {
  XmlElement e("axiom");
  e.Set("id", a.id);
  e.Set("form", a.form == AxiomForm::kDefinition ? "definition" : "constraint");
  if (const auto *dr = std::get_if<DomainRangeAxiom>(&a.body)) {
    e.Set("kind", "domain_range");
    e.Set("rel-type", dr->type.tag());
    e.Set("source-kind", std::string(ConceptKindName(dr->source_kind)));
    e.Set("target-kind", std::string(ConceptKindName(dr->target_kind)));
  } else if (const auto *dj = std::get_if<DisjointAxiom>(&a.body)) {
    e.Set("kind", "disjoint");
    for (const ConceptId &m : dj->members) e.Add(XmlElement("member")).Set("ref", m.value);
  } else if (const auto *ir = std::get_if<IrreflexiveAxiom>(&a.body)) {
    e.Set("kind", "irreflexive");
    e.Set("rel-type", ir->type.tag());
  } else if (const auto *ac = std::get_if<AcyclicAxiom>(&a.body)) {
    e.Set("kind", "acyclic");
    e.Set("rel-type", ac->type.tag());
  }
  if (a.scope) {
    XmlElement &scope = e.Add(XmlElement("scope"));
    for (const ConceptId &m : *a.scope) scope.Add(XmlElement("member")).Set("ref", m.value);
    if (a.scope->empty()) scope.Set("empty", "true");
  }
  return e;
}

std::set<ConceptId> Members(const XmlElement &e) {
  std::set<ConceptId> out;
  for (const XmlElement *m : e.All("member")) out.insert(ConceptId{m->Require("ref")});
  return out;
}

Axiom AxiomFromXml(const XmlElement &e) {
  Axiom a;
  a.id = e.Require("id");
  const std::string &form = e.Require("form");
  if (form == "definition") {
    a.form = AxiomForm::kDefinition;
  } else if (form == "constraint") {
    a.form = AxiomForm::kConstraint;
  } else {
    SchemaFail(e, "unknown axiom form '" + form + "'");
  }
  const std::string &kind = e.Require("kind");
  auto rel = [&] { return At(e, [&] { return RelationType::FromTag(e.Require("rel-type")); }); };
  if (kind == "domain_range") {
    a.body = DomainRangeAxiom{
        rel(), At(e, [&] { return ParseConceptKind(e.Require("source-kind")); }),
        At(e, [&] { return ParseConceptKind(e.Require("target-kind")); })};
  } else if (kind == "disjoint") {
    a.body = DisjointAxiom{Members(e)};
  } else if (kind == "irreflexive") {
    a.body = IrreflexiveAxiom{rel()};
  } else if (kind == "acyclic") {
    a.body = AcyclicAxiom{rel()};
  } else {
    SchemaFail(e, "unknown axiom kind '" + kind + "'");
  }
  if (const XmlElement *scope = e.Find("scope")) a.scope = Members(*scope);
  return a;
}

}  // namespace

XmlElement OntologyToXml(const Ontology &o) {
  XmlElement root("ontology");
  root.Set("name", o.name());
  root.Set("kind", std::string(OntologyKindName(o.kind())));
  root.Set("created", o.meta().created);
  root.Set("project", o.meta().project);

  XmlElement &concepts = root.Add(XmlElement("concepts"));
  for (const auto &[id, c] : o.concepts()) {
    XmlElement &e = concepts.Add(XmlElement("concept"));
    e.Set("id", id.value);
    e.Set("label", c.label);
    e.Set("normalized", c.normalized_label);
    e.Set("kind", std::string(ConceptKindName(c.kind)));
    for (const Span &s : c.provenance) {
      e.Add(XmlElement("span"))
          .Set("doc", s.doc)
          .Set("begin", std::to_string(s.begin))
          .Set("end", std::to_string(s.end));
    }
  }
  XmlElement &relations = root.Add(XmlElement("relations"));
  for (const auto &[key, r] : o.relations()) {
    XmlElement &e = relations.Add(XmlElement("relation"));
    e.Set("source", key.source.value);
    e.Set("target", key.target.value);
    e.Set("type", key.type.tag());
    e.Set("confidence", FormatDouble(r.confidence));
    for (const Evidence &ev : r.evidence) {
      e.Add(XmlElement("evidence"))
          .Set("doc", ev.doc)
          .Set("sentence", std::to_string(ev.sentence))
          .Set("rule", ev.rule);
    }
  }
  XmlElement &interps = root.Add(XmlElement("interpretations"));
  for (const Interpretation &i : o.interpretations()) {
    interps.Add(XmlElement("interpretation"))
        .Set("subject-kind",
             i.subject_kind == SubjectKind::kConcept ? "concept" : "relation-type")
        .Set("subject", i.subject)
        .Set("source", i.source)
        .Set("gloss", i.gloss);
  }
  XmlElement &axioms = root.Add(XmlElement("axioms"));
  for (const auto &[id, a] : o.axioms()) axioms.Add(AxiomToXml(a));
  return root;
}

Ontology OntologyFromXml(const XmlElement &root) {
  if (root.name != "ontology") SchemaFail(root, "expected <ontology>");
  OntologyKind kind = At(root, [&] { return ParseOntologyKind(root.Require("kind")); });
  OntologyMeta meta{root.Require("created"), root.Require("project")};

  std::vector<Concept> concepts;
  for (const XmlElement *e : root.One("concepts").All("concept")) {
    Concept c;
    c.id = ConceptId{e->Require("id")};
    c.label = e->Require("label");
    c.normalized_label = e->Require("normalized");
    c.kind = At(*e, [&] { return ParseConceptKind(e->Require("kind")); });
    for (const XmlElement *s : e->All("span")) {
      c.provenance.push_back(Span{s->Require("doc"), UIntAttr(*s, "begin"), UIntAttr(*s, "end")});
    }
    std::sort(c.provenance.begin(), c.provenance.end());
    concepts.push_back(std::move(c));
  }
  std::vector<SemanticRelation> relations;
  for (const XmlElement *e : root.One("relations").All("relation")) {
    SemanticRelation r;
    r.source = ConceptId{e->Require("source")};
    r.target = ConceptId{e->Require("target")};
    r.type = At(*e, [&] { return RelationType::FromTag(e->Require("type")); });
    r.confidence = DoubleAttr(*e, "confidence");
    for (const XmlElement *ev : e->All("evidence")) {
      r.evidence.push_back(Evidence{ev->Require("doc"), IntAttr(*ev, "sentence"),
                                    ev->Require("rule")});
    }
    std::sort(r.evidence.begin(), r.evidence.end());
    relations.push_back(std::move(r));
  }
  std::vector<Interpretation> interps;
  for (const XmlElement *e : root.One("interpretations").All("interpretation")) {
    Interpretation i;
    const std::string &kind_name = e->Require("subject-kind");
    if (kind_name == "concept") {
      i.subject_kind = SubjectKind::kConcept;
    } else if (kind_name == "relation-type") {
      i.subject_kind = SubjectKind::kRelationType;
    } else {
      SchemaFail(*e, "unknown subject-kind '" + kind_name + "'");
    }
    i.subject = e->Require("subject");
    i.source = e->Require("source");
    i.gloss = e->Require("gloss");
    interps.push_back(std::move(i));
  }
  std::vector<Axiom> axioms;
  for (const XmlElement *e : root.One("axioms").All("axiom")) {
    axioms.push_back(AxiomFromXml(*e));
  }
  return Ontology::FromParts(root.Require("name"), kind, std::move(meta),
                             std::move(concepts), std::move(relations),
                             std::move(interps), std::move(axioms));
}

std::string Serialize(const Ontology &ontology, std::string_view producer) {
  return WriteEnvelope(OntologyToXml(ontology), PayloadType::kOntology, producer);
}

Ontology ParseOntology(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  return OntologyFromXml(Payload(env, PayloadType::kOntology));
}

// ---------------------------------------------------------------------------
// Candidates

std::string Serialize(const CandidateSet &set, std::string_view producer) {
  XmlElement root("candidates");
  root.Set("corpus-docs", std::to_string(set.corpus_docs));
  root.Set("ranked", set.ranked ? "true" : "false");
  std::vector<std::pair<std::string, XmlElement>> items;
  for (size_t i = 0; i < set.candidates.size(); ++i) {
    const TermCandidate &c = set.candidates[i];
    XmlElement e("candidate");
    e.Set("id", c.key());
    e.Set("surface", c.surface_example);
    e.Set("freq", std::to_string(c.freq));
    e.Set("doc-freq", std::to_string(c.doc_freq));
    if (set.ranked) e.Set("rank", std::to_string(i + 1));
    if (c.scores) {
      e.Set("tfidf", FormatDouble(c.scores->tfidf));
      e.Set("cvalue", FormatDouble(c.scores->cvalue));
    }
    for (const std::string &n : c.nested_in) e.Add(XmlElement("nested-in")).Set("ref", n);
    for (const Span &s : c.occurrences) {
      e.Add(XmlElement("occurrence"))
          .Set("doc", s.doc)
          .Set("begin", std::to_string(s.begin))
          .Set("end", std::to_string(s.end));
    }
    items.emplace_back(c.key(), std::move(e));
  }
  std::sort(items.begin(), items.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  for (auto &[k, e] : items) root.children.push_back(std::move(e));
  return WriteEnvelope(root, PayloadType::kCandidates, producer);
}

CandidateSet ParseCandidates(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  const XmlElement &root = Payload(env, PayloadType::kCandidates);
  CandidateSet set;
  set.corpus_docs = UIntAttr(root, "corpus-docs");
  set.ranked = root.Require("ranked") == "true";
  std::vector<std::pair<size_t, TermCandidate>> items;
  for (const XmlElement *e : root.All("candidate")) {
    TermCandidate c;
    c.lemma_seq = SplitOn(e->Require("id"), ' ');
    c.surface_example = e->Require("surface");
    c.freq = UIntAttr(*e, "freq");
    c.doc_freq = UIntAttr(*e, "doc-freq");
    if (e->Attr("tfidf") || e->Attr("cvalue")) {
      c.scores = CandidateScores{DoubleAttr(*e, "tfidf"), DoubleAttr(*e, "cvalue")};
    }
    for (const XmlElement *n : e->All("nested-in")) c.nested_in.insert(n->Require("ref"));
    for (const XmlElement *s : e->All("occurrence")) {
      c.occurrences.push_back(Span{s->Require("doc"), UIntAttr(*s, "begin"), UIntAttr(*s, "end")});
    }
    if (c.doc_freq > c.freq || c.freq == 0) SchemaFail(*e, "inconsistent frequencies");
    size_t rank = set.ranked ? UIntAttr(*e, "rank") : items.size();
    items.emplace_back(rank, std::move(c));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  for (auto &[rank, c] : items) set.candidates.push_back(std::move(c));
  return set;
}

// ---------------------------------------------------------------------------
// Decisions

XmlElement DecisionToXml(const CurationDecision &d) {
  XmlElement e("decision");
  if (!d.id.empty()) e.Set("id", d.id);
  e.Set("verdict", std::string(VerdictName(d.verdict)));
  e.Set("iteration", std::to_string(d.iteration));
  if (d.target_kind == DecisionTarget::kTerm) {
    e.Set("target-kind", "term");
    e.Set("term", d.term);
  } else {
    e.Set("target-kind", "relation");
    e.Set("source", d.source);
    e.Set("target", d.target);
    e.Set("rel-type", d.rel_type);
  }
  if (!d.new_label.empty()) e.Set("new-label", d.new_label);
  if (!d.new_kind.empty()) e.Set("new-kind", d.new_kind);
  if (!d.author.empty()) e.Set("author", d.author);
  if (!d.at.empty()) e.Set("at", d.at);
  return e;
}

CurationDecision DecisionFromXml(const XmlElement &e) {
  CurationDecision d;
  d.id = e.Get("id");
  d.verdict = At(e, [&] { return ParseVerdict(e.Require("verdict")); });
  d.iteration = static_cast<int>(e.Attr("iteration") ? IntAttr(e, "iteration") : 0);
  std::string kind = e.Get("target-kind", "term");
  if (kind == "term") {
    d.target_kind = DecisionTarget::kTerm;
    d.term = e.Require("term");
  } else if (kind == "relation") {
    d.target_kind = DecisionTarget::kRelation;
    d.source = e.Require("source");
    d.target = e.Require("target");
    d.rel_type = e.Require("rel-type");
  } else {
    SchemaFail(e, "unknown target-kind '" + kind + "'");
  }
  d.new_label = e.Get("new-label");
  d.new_kind = e.Get("new-kind");
  d.author = e.Get("author");
  d.at = e.Get("at");
  At(e, [&] {
    CheckDecision(d);
    return 0;
  });
  return d;
}

std::string Serialize(const DecisionSet &set, std::string_view producer) {
  std::vector<CurationDecision> sorted = set.decisions;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto &a, const auto &b) { return a.id < b.id; });
  XmlElement root("decisions");
  for (const CurationDecision &d : sorted) root.children.push_back(DecisionToXml(d));
  return WriteEnvelope(root, PayloadType::kDecisions, producer);
}

DecisionSet ParseDecisions(std::string_view bytes) {
  XmlElement probe = ParseXml(bytes);
  XmlElement root;
  if (probe.name == "decisions") {
    root = std::move(probe);
  } else {
    Envelope env = ReadEnvelope(bytes);
    root = Payload(env, PayloadType::kDecisions);
  }
  DecisionSet set;
  for (const XmlElement *e : root.All("decision")) set.decisions.push_back(DecisionFromXml(*e));
  return set;
}

// ---------------------------------------------------------------------------
// Corpus manifest and index

CorpusManifest CorpusManifest::FromCorpus(const Corpus &corpus) {
  CorpusManifest m;
  m.project = corpus.project;
  for (const auto &[id, doc] : corpus.documents) {
    m.documents.push_back(ManifestEntry{id, doc.uri, doc.title, doc.fetched_at,
                                        Sha256Hex(doc.text), doc.lang_hint});
  }
  return m;
}

std::string Serialize(const CorpusManifest &m, std::string_view producer) {
  XmlElement root("corpus-manifest");
  root.Set("project", m.project);
  std::vector<ManifestEntry> docs = m.documents;
  std::sort(docs.begin(), docs.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
  for (const ManifestEntry &d : docs) {
    root.Add(XmlElement("document"))
        .Set("id", d.id)
        .Set("uri", d.uri)
        .Set("title", d.title)
        .Set("fetched-at", d.fetched_at)
        .Set("hash", d.hash)
        .Set("lang", d.lang);
  }
  return WriteEnvelope(root, PayloadType::kCorpusManifest, producer);
}

CorpusManifest ParseManifest(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  const XmlElement &root = Payload(env, PayloadType::kCorpusManifest);
  CorpusManifest m;
  m.project = root.Require("project");
  for (const XmlElement *e : root.All("document")) {
    ManifestEntry d{e->Require("id"),         e->Require("uri"),  e->Require("title"),
                    e->Require("fetched-at"), e->Require("hash"), e->Require("lang")};
    if (d.hash.substr(0, d.id.size()) != d.id) SchemaFail(*e, "document id is not its hash prefix");
    m.documents.push_back(std::move(d));
  }
  return m;
}

std::string SerializeIndex(const InvertedIndex &index) {
  XmlElement root("index");
  for (const auto &[token, postings] : index.postings()) {
    XmlElement &t = root.Add(XmlElement("token"));
    t.Set("value", token);
    for (const Posting &p : postings) {
      t.Add(XmlElement("posting")).Set("doc", p.doc).Set("tf", std::to_string(p.tf));
    }
  }
  return WriteXmlDocument(root);
}

InvertedIndex ParseIndex(std::string_view bytes) {
  XmlElement root = ParseXml(bytes);
  if (root.name != "index") SchemaFail(root, "expected <index>");
  InvertedIndex index;
  for (const XmlElement *t : root.All("token")) {
    for (const XmlElement *p : t->All("posting")) {
      index.AddPosting(t->Require("value"), Posting{p->Require("doc"), UIntAttr(*p, "tf")});
    }
  }
  return index;
}

// ---------------------------------------------------------------------------
// Reports

std::string Serialize(const Report &report, std::string_view producer) {
  XmlElement root("report");
  root.Set("title", report.title);
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const ReportEntry &r = report.entries[i];
    root.Add(XmlElement("entry"))
        .Set("id", Padded(i + 1))
        .Set("code", r.code)
        .Set("subject", r.subject)
        .Set("message", r.message);
  }
  return WriteEnvelope(root, PayloadType::kReport, producer);
}

Report ParseReport(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  const XmlElement &root = Payload(env, PayloadType::kReport);
  Report report;
  report.title = root.Require("title");
  for (const XmlElement *e : root.All("entry")) {
    report.entries.push_back({e->Require("code"), e->Require("subject"), e->Require("message")});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tokenized corpus and text graphs

std::string Serialize(const TokenizedCorpus &corpus, std::string_view producer) {
  std::vector<const TokenizedDoc *> docs;
  for (const TokenizedDoc &d : corpus.docs) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(), [](auto *a, auto *b) { return a->doc < b->doc; });
  XmlElement root("tokenized-corpus");
  for (const TokenizedDoc *d : docs) {
    XmlElement &de = root.Add(XmlElement("document"));
    de.Set("id", d->doc);
    de.Set("language", d->language);
    for (size_t s = 0; s < d->sentences.size(); ++s) {
      XmlElement &se = de.Add(XmlElement("sentence"));
      se.Set("id", Padded(s));
      for (const Token &t : d->sentences[s]) {
        XmlElement &te = se.Add(XmlElement("token"));
        te.Set("surface", t.surface)
            .Set("norm", t.norm)
            .Set("begin", std::to_string(t.begin))
            .Set("end", std::to_string(t.end));
        if (t.is_stopword) te.Set("stopword", "true");
      }
    }
  }
  return WriteEnvelope(root, PayloadType::kTokenizedCorpus, producer);
}

TokenizedCorpus ParseTokenizedCorpus(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  const XmlElement &root = Payload(env, PayloadType::kTokenizedCorpus);
  TokenizedCorpus corpus;
  for (const XmlElement *de : root.All("document")) {
    TokenizedDoc d;
    d.doc = de->Require("id");
    d.language = de->Require("language");
    for (const XmlElement *se : de->All("sentence")) {
      std::vector<Token> sentence;
      for (const XmlElement *te : se->All("token")) {
        Token t;
        t.surface = te->Require("surface");
        t.norm = te->Require("norm");
        t.begin = UIntAttr(*te, "begin");
        t.end = UIntAttr(*te, "end");
        t.is_stopword = te->Get("stopword") == "true";
        if (t.end <= t.begin) SchemaFail(*te, "empty token span");
        if (!sentence.empty() && t.begin < sentence.back().end) {
          SchemaFail(*te, "token offsets must increase");
        }
        sentence.push_back(std::move(t));
      }
      d.sentences.push_back(std::move(sentence));
    }
    corpus.docs.push_back(std::move(d));
  }
  return corpus;
}

std::string Serialize(const TextGraphSet &set, std::string_view producer) {
  std::vector<const TextGraph *> graphs;
  for (const TextGraph &g : set.graphs) graphs.push_back(&g);
  std::sort(graphs.begin(), graphs.end(), [](auto *a, auto *b) { return a->doc < b->doc; });
  XmlElement root("text-graphs");
  root.Set("window", std::to_string(set.window));
  for (const TextGraph *g : graphs) {
    XmlElement &ge = root.Add(XmlElement("graph"));
    ge.Set("doc", g->doc);
    for (const std::string &n : g->nodes) ge.Add(XmlElement("node")).Set("term", n);
    for (const auto &[pair, count] : g->edges) {
      ge.Add(XmlElement("edge"))
          .Set("a", pair.first)
          .Set("b", pair.second)
          .Set("count", std::to_string(count));
    }
  }
  return WriteEnvelope(root, PayloadType::kTextGraphs, producer);
}

TextGraphSet ParseTextGraphs(std::string_view bytes) {
  Envelope env = ReadEnvelope(bytes);
  const XmlElement &root = Payload(env, PayloadType::kTextGraphs);
  TextGraphSet set;
  set.window = static_cast<int>(IntAttr(root, "window"));
  for (const XmlElement *ge : root.All("graph")) {
    TextGraph g;
    g.doc = ge->Require("doc");
    for (const XmlElement *n : ge->All("node")) g.nodes.insert(n->Require("term"));
    for (const XmlElement *e : ge->All("edge")) {
      std::string a = e->Require("a"), b = e->Require("b");
      size_t count = UIntAttr(*e, "count");
      if (!(a < b) || count < 1) SchemaFail(*e, "edge must be canonical with count >= 1");
      if (!g.nodes.count(a) || !g.nodes.count(b)) SchemaFail(*e, "edge endpoint is not a node");
      g.edges[{a, b}] = count;
    }
    set.graphs.push_back(std::move(g));
  }
  return set;
}

// ---------------------------------------------------------------------------
// Turtle

std::string ConceptIri(const ConceptId &id) { return "<urn:ontoforge:concept:" + id.value + ">"; }

namespace {

std::string TurtleString(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string Predicate(const RelationType &type) {
  if (type.tag() == "is_a") return "rdfs:subClassOf";
  if (type.tag() == "part_of") return "of:partOf";
  if (type.tag() == "associated_with") return "of:associatedWith";
  return "<urn:ontoforge:relation:" + type.tag() + ">";
}

}  // namespace

std::string ExportTurtle(const Ontology &o) {
  ValidationReport report = o.Validate();
  if (!report.ok()) {
    std::vector<std::string> details;
    for (const Violation &v : report.violations) details.push_back(v.axiom_id + ": " + v.message);
    throw Error(ErrorCode::kValidationError,
                "cannot export an ontology that fails validation", details);
  }
  std::string out =
      "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "@prefix of: <urn:ontoforge:> .\n"
      "\n";
  for (const auto &[id, c] : o.concepts()) out += ConceptIri(id) + " a owl:Class .\n";
  for (const auto &[key, r] : o.relations()) {
    out += ConceptIri(key.source) + " " + Predicate(key.type) + " " + ConceptIri(key.target) +
           " .\n";
  }
  for (const Interpretation &i : o.interpretations()) {
    std::string subject = i.subject_kind == SubjectKind::kConcept
                              ? ConceptIri(ConceptId{i.subject})
                              : "<urn:ontoforge:relation:" + i.subject + ">";
    out += subject + " rdfs:comment " + TurtleString(i.gloss) + " .\n";
  }
  return out;
}

}  // namespace ontoforge
