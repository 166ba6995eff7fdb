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

// XML envelopes exchanged between pipeline stages and kept on disk, plus the
// Turtle export.
//
// Every file is an <envelope> carrying one payload element:
//
//   <?xml version="1.0" encoding="UTF-8"?>
//   <envelope checksum="<sha256>" payload-type="ontology" producer="..."
//             schema-version="ontoforge-1">
//     <ontology ...>...</ontology>
//   </envelope>
//
// The checksum covers the payload element's bytes from its '<' to the end of
// its closing tag. Output is canonical: children sorted by id, attributes by
// name, UTF-8 with LF endings, so equal values serialize to equal bytes.
// schemas/ontoforge-1.md documents every payload.

#ifndef ONTOFORGE_INTERCHANGE_H_
#define ONTOFORGE_INTERCHANGE_H_

#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/corpus.h"
#include "ontoforge/extractor.h"
#include "ontoforge/linguistic.h"
#include "ontoforge/ontology.h"
#include "ontoforge/xml.h"

namespace ontoforge {

inline constexpr std::string_view kSchemaVersion = "ontoforge-1";

enum class PayloadType {
  kOntology,
  kCandidates,
  kDecisions,
  kCorpusManifest,
  kReport,
  kTokenizedCorpus,
  kTextGraphs,
};

std::string_view PayloadTypeName(PayloadType type);
// Throws parse-error for unknown names.
PayloadType ParsePayloadType(std::string_view name);

struct CandidateSet {
  size_t corpus_docs = 0;
  bool ranked = false;  // order is rank order; otherwise sorted by key
  std::vector<TermCandidate> candidates;
  bool operator==(const CandidateSet &) const = default;
};

struct DecisionSet {
  std::vector<CurationDecision> decisions;  // ordered by id
  bool operator==(const DecisionSet &) const = default;
};

struct ManifestEntry {
  std::string id;
  std::string uri;
  std::string title;
  std::string fetched_at;
  std::string hash;  // full SHA-256 of the text
  std::string lang;
  bool operator==(const ManifestEntry &) const = default;
};

struct CorpusManifest {
  std::string project;
  std::vector<ManifestEntry> documents;  // sorted by id
  static CorpusManifest FromCorpus(const Corpus &corpus);
  bool operator==(const CorpusManifest &) const = default;
};

struct ReportEntry {
  std::string code;
  std::string subject;
  std::string message;
  bool operator==(const ReportEntry &) const = default;
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;  // order preserved
  bool operator==(const Report &) const = default;
};

struct TokenizedCorpus {
  std::vector<TokenizedDoc> docs;  // sorted by document id
  bool operator==(const TokenizedCorpus &) const = default;
};

struct TextGraphSet {
  int window = 2;
  std::vector<TextGraph> graphs;  // sorted by document id
  bool operator==(const TextGraphSet &) const = default;
};

struct Envelope {
  std::string schema_version;
  std::string producer;
  PayloadType type = PayloadType::kReport;
  std::string checksum;
  XmlElement payload;
};

// Wraps a payload element. The result is the complete file contents.
std::string WriteEnvelope(const XmlElement &payload, PayloadType type,
                          std::string_view producer);

// Throws parse-error (malformed XML, schema violation, unknown payload type)
// or integrity-error (checksum mismatch).
Envelope ReadEnvelope(std::string_view bytes);

std::string Serialize(const Ontology &ontology, std::string_view producer = "ontology-model");
std::string Serialize(const CandidateSet &candidates, std::string_view producer = "linguistic-processor");
std::string Serialize(const DecisionSet &decisions, std::string_view producer = "orchestrator");
std::string Serialize(const CorpusManifest &manifest, std::string_view producer = "corpus-store");
std::string Serialize(const Report &report, std::string_view producer = "orchestrator");
std::string Serialize(const TokenizedCorpus &docs, std::string_view producer = "linguistic-processor");
std::string Serialize(const TextGraphSet &graphs, std::string_view producer = "linguistic-processor");

// Parsers check envelope integrity, the payload type and the payload schema.
// ParseOntology additionally rejects structural invariant violations with
// validation-error.
Ontology ParseOntology(std::string_view bytes);
CandidateSet ParseCandidates(std::string_view bytes);
CorpusManifest ParseManifest(std::string_view bytes);
Report ParseReport(std::string_view bytes);
TokenizedCorpus ParseTokenizedCorpus(std::string_view bytes);
TextGraphSet ParseTextGraphs(std::string_view bytes);
// Accepts an envelope or a bare <decisions> document, the form used for
// hand-written decision files.
DecisionSet ParseDecisions(std::string_view bytes);

// Payload element builders and readers, shared with the JSON mirror.
XmlElement OntologyToXml(const Ontology &ontology);
Ontology OntologyFromXml(const XmlElement &element);
XmlElement DecisionToXml(const CurationDecision &decision);
CurationDecision DecisionFromXml(const XmlElement &element);

// Plain canonical XML (no envelope) for the corpus index file.
std::string SerializeIndex(const InvertedIndex &index);
InvertedIndex ParseIndex(std::string_view bytes);

// Turtle subset: @prefix lines, then one statement per line:
//   <concept> a owl:Class .
//   <a> rdfs:subClassOf <b> .              (is_a)
//   <a> of:partOf <b> .                    (part_of)
//   <a> of:associatedWith <b> .            (associated_with)
//   <a> <urn:ontoforge:relation:TAG> <b> . (extensions)
//   <subject> rdfs:comment "gloss" .
// Throws validation-error if the ontology does not validate.
std::string ExportTurtle(const Ontology &ontology);

std::string ConceptIri(const ConceptId &id);

}  // namespace ontoforge

#endif  // ONTOFORGE_INTERCHANGE_H_
