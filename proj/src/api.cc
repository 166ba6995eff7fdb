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

#include "ontoforge/api.h"

#include <algorithm>
#include <climits>

#include "httplib.h"
#include "json.hpp"
#include "ontoforge/error.h"
#include "ontoforge/interchange.h"
#include "ontoforge/text.h"

namespace ontoforge {

using nlohmann::json;

namespace {

json ElementJson(const XmlElement &e) {
  json j = json::object();
  for (const auto &[k, v] : e.attributes) j[k] = v;
  if (!e.text.empty()) j["text"] = e.text;
  for (const XmlElement &c : e.children) {
    if (c.attributes.empty() && c.text.empty()) {
      json items = json::array();
      for (const XmlElement &g : c.children) items.push_back(ElementJson(g));
      j[c.name] = std::move(items);
    } else {
      j[c.name].push_back(ElementJson(c));
    }
  }
  return j;
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kBusy: return 409;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kValidationError:
    case ErrorCode::kUnknownConcept:
    case ErrorCode::kCycleViolation: return 400;
    default: return 500;
  }
}

ApiResponse ErrorResponse(int status, std::string_view code, std::string_view message) {
  return {status, json{{"code", code}, {"message", message}}.dump()};
}

ApiResponse Ok(const json &body, int status = 200) { return {status, body.dump()}; }

std::optional<int> IterationParam(const std::map<std::string, std::string> &query) {
  auto it = query.find("iteration");
  if (it == query.end() || it->second.empty()) return std::nullopt;
  long long v = ParseInt(it->second);
  if (v < 0 || v > INT_MAX) throw Error(ErrorCode::kInvalidArgument, "iteration out of range");
  return static_cast<int>(v);
}

CurationDecision DecisionFromJson(const json &j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "a decision must be an object");
  XmlElement e("decision");
  for (const auto &[key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "id" || name == "iteration") continue;  // assigned by the server
    if (value.is_string()) {
      e.Set(name, value.get<std::string>());
    } else if (value.is_number() || value.is_boolean()) {
      e.Set(name, value.dump());
    } else if (!value.is_null()) {
      throw Error(ErrorCode::kInvalidArgument, "decision field '" + key + "' must be a scalar");
    }
  }
  try {
    return DecisionFromXml(e);
  } catch (const ParseError &err) {
    throw Error(ErrorCode::kInvalidArgument, err.what());
  }
}

}  // namespace

std::string XmlToJson(const XmlElement &element) { return ElementJson(element).dump(); }

ApiHandler::ApiHandler(std::filesystem::path project_dir) : dir_(std::move(project_dir)) {
  Workspace::Open(dir_);
}

ApiHandler::~ApiHandler() { Wait(); }

void ApiHandler::Wait() {
  std::thread t;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    t = std::move(worker_);
  }
  if (t.joinable()) t.join();
}

ApiResponse ApiHandler::Handle(std::string_view method, std::string_view path,
                               const std::map<std::string, std::string> &query,
                               std::string_view body) {
  try {
    if (method == "GET") {
      if (path == "/api/project") return Project();
      if (path == "/api/candidates") return Candidates(query);
      if (path == "/api/ontology") return OntologyView(query);
      if (path == "/api/graph") return Graph(query);
    } else if (method == "POST") {
      if (path == "/api/decisions") return PostDecisions(body);
      if (path == "/api/iterate") return StartIterate();
    }
    for (std::string_view known : {"/api/project", "/api/candidates", "/api/ontology",
                                   "/api/graph", "/api/decisions", "/api/iterate"}) {
      if (path == known) {
        return ErrorResponse(405, "method-not-allowed",
                             std::string(method) + " is not supported on " + std::string(path));
      }
    }
    return ErrorResponse(404, "not-found", "no endpoint " + std::string(path));
  } catch (const Error &e) {
    return ErrorResponse(StatusFor(e.code()), e.code_name(), e.what());
  } catch (const std::exception &e) {
    return ErrorResponse(500, "internal-error", e.what());
  }
}

ApiResponse ApiHandler::Project() {
  Workspace ws = Workspace::Open(dir_);
  ontoforge::Project p = ws.Load();
  json stages = json::object();
  for (const std::string &s : GoalStages(Goal::kIntegrated)) {
    const StageState &st = p.stages[s];
    stages[s] = {{"status", std::string(StageStatusName(st.status))},
                 {"artifact", st.artifact},
                 {"digest", st.digest},
                 {"diagnostic", st.diagnostic},
                 {"iteration", st.iteration}};
  }
  json events = json::array();
  for (const ProgressEvent &e : ws.Events()) {
    events.push_back({{"project", e.project}, {"stage", e.stage}, {"status", e.status},
                      {"timestamp", e.timestamp}, {"ms", e.ms}, {"detail", e.detail}});
  }
  json iterate;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    iterate = {{"running", running_}, {"error", last_error_}};
  }
  return Ok({{"name", p.name},
             {"mode", std::string(ProjectModeName(p.mode))},
             {"goal", std::string(GoalName(p.goal))},
             {"iteration", p.iteration},
             {"config", json::parse(p.config.ToJson())},
             {"stages", stages},
             {"events", events},
             {"iterate", iterate}});
}

ApiResponse ApiHandler::Candidates(const std::map<std::string, std::string> &query) {
  Workspace ws = Workspace::Open(dir_);
  std::optional<int> iteration = IterationParam(query);
  std::string bytes = ws.Artifact("score", iteration);
  Envelope env = ReadEnvelope(bytes);
  CandidateSet set = ParseCandidates(bytes);
  ProfileSet profiles = ws.Profiles();

  // Latest persisted verdict per candidate key.
  std::map<std::string, std::string> by_surface;
  for (const TermCandidate &c : set.candidates) by_surface.emplace(c.surface_example, c.key());
  std::map<std::string, CurationDecision> verdicts;
  for (auto &[target, d] : EffectiveDecisions(ws.Decisions(), INT_MAX)) {
    if (d.target_kind != DecisionTarget::kTerm) continue;
    auto it = by_surface.find(Normalize(d.term));
    std::string key = it != by_surface.end() ? it->second : LemmaKey(profiles.LemmaSequence(d.term));
    verdicts.insert_or_assign(key, d);
  }

  json rows = json::array();
  std::map<std::string, json> by_id;
  json payload = ElementJson(env.payload);
  for (json &row : payload["candidate"]) by_id[row["id"].get<std::string>()] = row;
  for (const TermCandidate &c : set.candidates) {  // rank order
    json row = by_id[c.key()];
    auto v = verdicts.find(c.key());
    if (v != verdicts.end()) {
      row["verdict"] = std::string(VerdictName(v->second.verdict));
      row["decision"] = ElementJson(DecisionToXml(v->second));
    } else {
      row["verdict"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return Ok({{"iteration", iteration.value_or(ws.Load().iteration)},
             {"corpus-docs", payload["corpus-docs"]},
             {"candidates", rows}});
}

ApiResponse ApiHandler::OntologyView(const std::map<std::string, std::string> &query) {
  Workspace ws = Workspace::Open(dir_);
  Ontology o = ws.FinalOntology(IterationParam(query));
  return Ok(ElementJson(OntologyToXml(o)));
}

ApiResponse ApiHandler::Graph(const std::map<std::string, std::string> &query) {
  Workspace ws = Workspace::Open(dir_);
  Ontology o = ws.FinalOntology(IterationParam(query));
  std::map<std::string, json> glosses;
  for (const Interpretation &i : o.interpretations()) {
    if (i.subject_kind != SubjectKind::kConcept) continue;
    glosses[i.subject].push_back({{"gloss", i.gloss}, {"source", i.source}});
  }
  json nodes = json::array();
  for (const auto &[id, c] : o.concepts()) {
    json provenance = json::array();
    for (const Span &s : c.provenance) {
      provenance.push_back({{"doc", s.doc}, {"begin", s.begin}, {"end", s.end}});
    }
    nodes.push_back({{"id", id.value},
                     {"label", c.label},
                     {"kind", std::string(ConceptKindName(c.kind))},
                     {"interpretations", glosses.count(id.value) ? glosses[id.value] : json::array()},
                     {"provenance", provenance}});
  }
  json links = json::array();
  for (const auto &[key, r] : o.relations()) {
    links.push_back({{"source", key.source.value},
                     {"target", key.target.value},
                     {"type", key.type.tag()},
                     {"hierarchical", key.type.hierarchical()},
                     {"confidence", r.confidence}});
  }
  return Ok({{"name", o.name()}, {"nodes", nodes}, {"links", links}});
}

ApiResponse ApiHandler::PostDecisions(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception &e) {
    return ErrorResponse(400, "invalid-argument", std::string("body is not JSON: ") + e.what());
  }
  json list = j.is_object() && j.contains("decisions") ? j["decisions"]
              : j.is_array()                           ? j
                                                       : json::array({j});
  if (!list.is_array() || list.empty()) {
    return ErrorResponse(400, "invalid-argument", "no decisions in the request body");
  }
  std::vector<CurationDecision> decisions;
  for (const json &item : list) decisions.push_back(DecisionFromJson(item));
  Workspace ws = Workspace::Open(dir_);
  json out = json::array();
  for (const CurationDecision &d : ws.PostDecisions(std::move(decisions))) {
    out.push_back(ElementJson(DecisionToXml(d)));
  }
  return Ok({{"decisions", out}});
}

ApiResponse ApiHandler::StartIterate() {
  std::lock_guard<std::mutex> lock(mutex_);
  Workspace ws = Workspace::Open(dir_);
  if (running_ || ws.Busy()) {
    return ErrorResponse(409, "busy-error", "a run is already in progress");
  }
  int next = ws.Load().iteration + 1;
  if (worker_.joinable()) worker_.join();
  running_ = true;
  last_error_.clear();
  worker_ = std::thread([this] {
    std::string error;
    try {
      Workspace::Open(dir_).Iterate({});
    } catch (const std::exception &e) {
      error = e.what();
    }
    std::lock_guard<std::mutex> guard(mutex_);
    running_ = false;
    last_error_ = error;
  });
  return Ok({{"status", "started"}, {"iteration", next}}, 202);
}

void Serve(const std::filesystem::path &project_dir, int port, const std::string &host) {
  ApiHandler handler(project_dir);
  httplib::Server server;
  auto route = [&](const httplib::Request &req, httplib::Response &res) {
    std::map<std::string, std::string> query(req.params.begin(), req.params.end());
    ApiResponse r = handler.Handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  server.Get(R"(/api/.*)", route);
  server.Post(R"(/api/.*)", route);
  server.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  if (!server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
  server.listen_after_bind();
}

}  // namespace ontoforge
