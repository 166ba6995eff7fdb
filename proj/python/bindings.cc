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

// Python bindings for the main operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ontoforge/corpus.h"
#include "ontoforge/defaults.h"
#include "ontoforge/error.h"
#include "ontoforge/extractor.h"
#include "ontoforge/integration.h"
#include "ontoforge/interchange.h"
#include "ontoforge/linguistic.h"
#include "ontoforge/ontology.h"
#include "ontoforge/orchestrator.h"
#include "ontoforge/text.h"

namespace py = pybind11;
using namespace ontoforge;

namespace {

py::dict ConceptDict(const Concept &c) {
  py::dict d;
  d["id"] = c.id.value;
  d["label"] = c.label;
  d["normalized_label"] = c.normalized_label;
  d["kind"] = std::string(ConceptKindName(c.kind));
  d["provenance"] = c.provenance.size();
  return d;
}

py::dict RelationDict(const SemanticRelation &r) {
  py::dict d;
  d["source"] = r.source.value;
  d["target"] = r.target.value;
  d["type"] = r.type.tag();
  d["confidence"] = r.confidence;
  return d;
}

py::dict CandidateDict(const TermCandidate &c) {
  py::dict d;
  d["key"] = c.key();
  d["lemma_seq"] = c.lemma_seq;
  d["surface"] = c.surface_example;
  d["freq"] = c.freq;
  d["doc_freq"] = c.doc_freq;
  d["nested_in"] = std::vector<std::string>(c.nested_in.begin(), c.nested_in.end());
  if (c.scores) {
    d["tfidf"] = c.scores->tfidf;
    d["cvalue"] = c.scores->cvalue;
  }
  return d;
}

CurationDecision DecisionFromDict(const py::dict &d) {
  CurationDecision out;
  auto get = [&](const char *key) {
    return d.contains(key) ? py::cast<std::string>(d[key]) : std::string();
  };
  out.verdict = ParseVerdict(get("verdict"));
  if (d.contains("term")) {
    out.target_kind = DecisionTarget::kTerm;
    out.term = get("term");
  } else {
    out.target_kind = DecisionTarget::kRelation;
    out.source = get("source");
    out.target = get("target");
    out.rel_type = get("rel_type");
  }
  out.new_label = get("new_label");
  out.new_kind = get("new_kind");
  out.author = get("author");
  return out;
}

std::vector<TermCandidate> Candidates(const std::vector<std::string> &texts, int max_ngram) {
  ProfileSet profiles = DefaultProfiles();
  std::vector<TokenizedDoc> docs;
  for (const std::string &t : texts) {
    Document doc = MakeDocument("memory:" + std::to_string(docs.size()), t, "");
    docs.push_back(Analyze(doc, profiles.ForText(doc.text)));
  }
  return ScoreCandidates(ExtractCandidates(docs, max_ngram), docs.size());
}

}  // namespace

PYBIND11_MODULE(_ontoforge, m) {
  m.doc() = "OntoForge ontology learning pipeline";

  static py::exception<Error> error(m, "OntoForgeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      PyErr_SetString(error.ptr(), (std::string(e.code_name()) + ": " + e.what()).c_str());
    }
  });

  m.def("normalize", [](const std::string &s) { return Normalize(s); });
  m.def("concept_id", [](const std::string &label) {
    return ConceptId::FromNormalizedLabel(Normalize(label)).value;
  });

  py::class_<Ontology>(m, "Ontology")
      .def(py::init([](const std::string &name) {
             return Ontology::Create(name, OntologyKind::kDomain);
           }),
           py::arg("name"))
      .def_property_readonly("name", &Ontology::name)
      .def_property_readonly("kind", [](const Ontology &o) {
        return std::string(OntologyKindName(o.kind()));
      })
      .def("add_concept",
           [](Ontology &o, const std::string &label, const std::string &kind) {
             return o.AddConcept(label, ParseConceptKind(kind)).value;
           },
           py::arg("label"), py::arg("kind") = "object")
      .def("add_relation",
           [](Ontology &o, const std::string &source, const std::string &target,
              const std::string &type, double confidence) {
             o.AddRelation(SemanticRelation{ConceptId{source}, ConceptId{target},
                                            RelationType::FromTag(type), confidence, {}});
           },
           py::arg("source"), py::arg("target"), py::arg("type") = "is_a",
           py::arg("confidence") = 1.0)
      .def("add_interpretation",
           [](Ontology &o, const std::string &concept_id, const std::string &gloss,
              const std::string &source) {
             o.AddInterpretation({SubjectKind::kConcept, concept_id, gloss, source});
           },
           py::arg("concept_id"), py::arg("gloss"), py::arg("source") = "user")
      .def("concepts", [](const Ontology &o) {
        py::list out;
        for (const auto &[id, c] : o.concepts()) out.append(ConceptDict(c));
        return out;
      })
      .def("relations", [](const Ontology &o) {
        py::list out;
        for (const auto &[k, r] : o.relations()) out.append(RelationDict(r));
        return out;
      })
      .def("interpretation_count", [](const Ontology &o) { return o.interpretations().size(); })
      .def("validate", [](const Ontology &o) {
        py::list out;
        for (const Violation &v : o.Validate().violations) {
          py::dict d;
          d["axiom"] = v.axiom_id;
          d["elements"] = v.elements;
          d["message"] = v.message;
          out.append(d);
        }
        return out;
      })
      .def("serialize", [](const Ontology &o) { return Serialize(o); })
      .def("to_turtle", [](const Ontology &o) { return ExportTurtle(o); })
      .def("__eq__", [](const Ontology &a, const Ontology &b) { return a == b; });

  m.def("parse_ontology", [](const std::string &bytes) { return ParseOntology(bytes); });
  m.def(
      "merge",
      [](const Ontology &a, const Ontology &b, double threshold) {
        MergeResult r = Merge(a, b, Align(a, b, threshold, DefaultProfiles()));
        return py::make_tuple(r.ontology, r.diagnostics);
      },
      py::arg("left"), py::arg("right"), py::arg("threshold") = 0.5);

  m.def(
      "extract_candidates",
      [](const std::vector<std::string> &texts, int max_ngram) {
        py::list out;
        for (const TermCandidate &c : Candidates(texts, max_ngram)) out.append(CandidateDict(c));
        return out;
      },
      py::arg("texts"), py::arg("max_ngram") = 3);

  m.def("create_project",
        [](const std::filesystem::path &dir, const std::string &mode,
           const std::string &config_json) {
          ProjectConfig config =
              config_json.empty() ? ProjectConfig{} : ProjectConfig::FromJson(config_json);
          Workspace::Create(dir, ParseProjectMode(mode), config);
        },
        py::arg("dir"), py::arg("mode") = "accumulate", py::arg("config_json") = "");
  m.def("ingest", [](const std::filesystem::path &dir, const std::vector<std::string> &paths) {
    IngestResult r = Workspace::Open(dir).Ingest(paths);
    return py::make_tuple(r.added.size(), r.duplicates.size());
  });
  m.def(
      "run",
      [](const std::filesystem::path &dir, const std::string &goal) {
        py::gil_scoped_release release;
        Project p = Workspace::Open(dir).Run(ParseGoal(goal));
        return p.iteration;
      },
      py::arg("dir"), py::arg("goal") = "domain");
  m.def("iterate", [](const std::filesystem::path &dir, const std::vector<py::dict> &decisions) {
    std::vector<CurationDecision> ds;
    for (const py::dict &d : decisions) ds.push_back(DecisionFromDict(d));
    IterateResult r = [&] {
      py::gil_scoped_release release;
      return Workspace::Open(dir).Iterate(std::move(ds));
    }();
    return py::make_tuple(r.project.iteration, r.warnings);
  });
  m.def(
      "export",
      [](const std::filesystem::path &dir, const std::string &format) {
        return Workspace::Open(dir).Export(format);
      },
      py::arg("dir"), py::arg("format") = "xml");
  m.def("final_ontology",
        [](const std::filesystem::path &dir) { return Workspace::Open(dir).FinalOntology(); });
}
