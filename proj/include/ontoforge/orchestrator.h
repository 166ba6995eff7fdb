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

// Project lifecycle and the staged pipeline.
//
// A project is a directory:
//
//   project.json     name, mode and configuration
//   state.json       iteration counter and per-stage state
//   events.jsonl     progress events, one JSON object per line
//   decisions.xml    every curation decision ever posted
//   corpus/          ingested documents plus manifest.xml
//   index.xml        inverted index
//   bus/<i>/<stage>.xml  stage artifacts (envelopes) for iteration i
//   kb/              finished ontologies
//   .lock            held while a run or mutation is in progress
//
// Stages exchange data only through the envelope files on the bus.

#ifndef ONTOFORGE_ORCHESTRATOR_H_
#define ONTOFORGE_ORCHESTRATOR_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/corpus.h"
#include "ontoforge/extractor.h"
#include "ontoforge/integration.h"
#include "ontoforge/interchange.h"
#include "ontoforge/linguistic.h"
#include "ontoforge/ontology.h"

namespace ontoforge {

enum class ProjectMode { kAccumulate, kProcess };
enum class Goal { kDomain, kIntegrated };
enum class StageStatus { kPending, kRunning, kDone, kFailed };

std::string_view ProjectModeName(ProjectMode mode);
ProjectMode ParseProjectMode(std::string_view name);
std::string_view GoalName(Goal goal);
Goal ParseGoal(std::string_view name);
std::string_view StageStatusName(StageStatus status);

// Keys of project.json's "config" object. Paths are relative to the project
// directory; "builtin" selects the resources compiled into the library.
struct ProjectConfig {
  std::string profiles = "builtin";          // directory of *.profile files
  std::string patterns = "builtin";          // pattern file
  std::vector<std::string> dictionaries = {"builtin"};  // TSV files
  int max_ngram = 3;
  int window = 2;
  size_t top_k_terms = 40;
  size_t graph_lexicon = 0;  // multiword terms matched in text graphs; 0 = 2 * top_k_terms
  double pmi_threshold = 0.5;
  size_t min_pair_count = 2;
  std::vector<std::string> pattern_set;
  std::vector<std::string> seeds;  // relevance filter; empty keeps every document
  double min_relevance = 0.0;
  double align_threshold = 0.5;
  std::vector<std::string> integrate_sources;  // ontology files or kb names
  std::vector<std::string> url_allowlist;
  std::string timestamp = "1970-01-01T00:00:00Z";  // stamped into ontology meta
  int workers = 0;                                 // 0 = hardware concurrency

  // Unknown keys and out-of-range values are invalid-argument.
  static ProjectConfig FromJson(std::string_view json);
  std::string ToJson() const;
  bool operator==(const ProjectConfig &) const = default;
};

struct StageState {
  StageStatus status = StageStatus::kPending;
  std::string artifact;  // relative to the project directory
  std::string digest;    // SHA-256 of the artifact bytes
  std::string diagnostic;
  int iteration = 0;
  bool operator==(const StageState &) const = default;
};

struct ProgressEvent {
  std::string project;
  std::string stage;
  std::string status;
  std::string timestamp;  // ISO 8601 UTC with milliseconds
  long long ms = 0;       // same instant; strictly increasing per project
  std::string detail;
};

struct Project {
  std::string name;
  ProjectMode mode = ProjectMode::kAccumulate;
  ProjectConfig config;
  int iteration = 0;
  Goal goal = Goal::kDomain;
  std::map<std::string, StageState> stages;
};

// Resources shared by the stages of one run.
struct Resources {
  ProfileSet profiles;
  std::vector<LexicalPattern> patterns;
  std::vector<DictionarySource> dictionaries;
};

struct StageContext {
  const Project &project;
  std::filesystem::path dir;
  const Resources &resources;
  std::vector<CurationDecision> decisions;
  std::map<std::string, std::string> inputs;  // stage id -> envelope bytes
  std::vector<std::string> diagnostics;       // reported as warning events

  const std::string &Input(const std::string &stage) const;
  ExtractionParams Params() const;
  OntologyMeta Meta() const;
};

struct StageInput {
  std::string stage;
  PayloadType type;
};

struct StageBinding {
  std::vector<StageInput> inputs;
  PayloadType output;
  std::function<std::string(StageContext &)> run;  // returns envelope bytes
};

using StageRegistry = std::map<std::string, StageBinding>;

StageRegistry DefaultRegistry();

// Stage ids a goal needs: eight for the domain goal, plus integrate.
std::vector<std::string> GoalStages(Goal goal);

// Topological order of the goal's stages, ties broken by stage id. Throws plan-error for a missing binding, an input
// not produced by the named stage, a type mismatch or a cycle, and for the
// integrated goal when no further source ontology is configured.
std::vector<std::string> Plan(const StageRegistry &registry, Goal goal,
                              const ProjectConfig &config);

struct IterateResult {
  Project project;
  std::vector<std::string> warnings;  // decisions naming unknown targets
};

class Workspace {
 public:
  // $ONTOFORGE_HOME, or ./project when unset.
  static std::filesystem::path Home();
  // A bare name lives under Home(); anything containing a path separator is
  // taken as a directory.
  static std::filesystem::path Resolve(std::string_view project);

  // Throws invalid-argument if the directory already holds a project.
  static Workspace Create(const std::filesystem::path &dir,
                          ProjectMode mode = ProjectMode::kAccumulate,
                          ProjectConfig config = {});
  // Throws not-found if there is no project.json.
  static Workspace Open(const std::filesystem::path &dir);

  const std::filesystem::path &dir() const { return dir_; }
  void set_registry(StageRegistry registry) { registry_ = std::move(registry); }

  Project Load() const;
  void SaveConfig(const ProjectConfig &config);

  // Adds documents and marks the ingest stage and everything after it pending.
  IngestResult Ingest(const std::vector<std::string> &sources);

  // Runs every stage of the plan that is not done. A done stage whose artifact
  // has gone missing is reset together with its successors. Throws busy-error
  // if another run holds the lock, stage-failure after recording a failed
  // stage.
  Project Run(Goal goal = Goal::kDomain);

  // Persists decisions for the next iteration, bumps the iteration counter and
  // reruns from candidates onward. Requires a completed assemble stage.
  IterateResult Iterate(std::vector<CurationDecision> decisions);

  // Persists decisions for the next iteration without running anything.
  std::vector<CurationDecision> PostDecisions(std::vector<CurationDecision> decisions);

  std::vector<CurationDecision> Decisions() const;
  std::vector<ProgressEvent> Events() const;

  // Envelope bytes of a stage artifact. Without an iteration, the newest one.
  // Throws not-found.
  std::string Artifact(std::string_view stage, std::optional<int> iteration = std::nullopt) const;

  // The integrated ontology when present, otherwise the assembled one.
  Ontology FinalOntology(std::optional<int> iteration = std::nullopt) const;

  // "xml" (envelope) or "ttl".
  std::string Export(std::string_view format, std::optional<int> iteration = std::nullopt) const;

  // Process mode only: aligns and merges two stored ontologies (kb names or
  // files) and stores the result in kb/.
  MergeResult MergeStored(const std::string &left, const std::string &right);

  std::filesystem::path KbPath(std::string_view name) const;

  // Language profiles named by the project configuration.
  ProfileSet Profiles() const;

  // True while another holder (a run, a mutation) has the project lock.
  bool Busy() const;

 private:
  explicit Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {}

  Project RunLocked(Goal goal);
  void SaveState(const Project &project) const;
  void Emit(const std::string &stage, std::string_view status, std::string detail) const;
  Resources LoadResources(const ProjectConfig &config) const;
  Ontology LoadOntologyRef(const std::string &ref) const;

  std::filesystem::path dir_;
  StageRegistry registry_ = DefaultRegistry();
};

}  // namespace ontoforge

#endif  // ONTOFORGE_ORCHESTRATOR_H_
