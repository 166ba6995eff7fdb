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

#include "ontoforge/orchestrator.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"
#include "ontoforge/defaults.h"
#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace ontoforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> &AllStages() {
  static const std::vector<std::string> stages = {
      "ingest", "analyze", "candidates", "score", "graph",
      "taxonomic", "associative", "assemble", "integrate"};
  return stages;
}

// Stages recomputed by iterate.
const std::set<std::string> &CurationStages() {
  static const std::set<std::string> stages = {
      "candidates", "score", "graph", "taxonomic", "associative", "assemble", "integrate"};
  return stages;
}

template <typename Enum, size_t N>
Enum ParseName(std::string_view name, const std::pair<Enum, const char *> (&table)[N],
               const char *what) {
  for (const auto &[value, text] : table) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("unknown ") + what + " '" +
                                               std::string(name) + "'");
}

constexpr std::pair<ProjectMode, const char *> kModes[] = {
    {ProjectMode::kAccumulate, "accumulate"}, {ProjectMode::kProcess, "process"}};
constexpr std::pair<Goal, const char *> kGoals[] = {{Goal::kDomain, "domain"},
                                                    {Goal::kIntegrated, "integrated"}};
constexpr std::pair<StageStatus, const char *> kStatuses[] = {
    {StageStatus::kPending, "pending"},
    {StageStatus::kRunning, "running"},
    {StageStatus::kDone, "done"},
    {StageStatus::kFailed, "failed"}};

class ProjectLock {
 public:
  explicit ProjectLock(const fs::path &dir) {
    fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorCode::kIoError, "cannot open lock file in " + dir.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::kBusy, "project " + dir.filename().string() +
                                        " is busy with another run");
    }
  }
  ~ProjectLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  ProjectLock(const ProjectLock &) = delete;
  ProjectLock &operator=(const ProjectLock &) = delete;

 private:
  int fd_ = -1;
};

std::string IsoFromMs(long long ms) {
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms % 1000));
  return buf;
}

std::string LastLine(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  in.seekg(0, std::ios::end);
  std::streamoff size = in.tellg();
  std::streamoff start = std::max<std::streamoff>(0, size - 8192);
  in.seekg(start);
  std::string tail((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  while (!tail.empty() && tail.back() == '\n') tail.pop_back();
  size_t nl = tail.rfind('\n');
  return nl == std::string::npos ? tail : tail.substr(nl + 1);
}

std::mutex &EventMutex() {
  static std::mutex m;
  return m;
}

template <typename F>
void ParallelFor(size_t n, int workers, F f) {
  size_t w = workers > 0 ? static_cast<size_t>(workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  w = std::min(w, n);
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (size_t t = 0; t < w; ++t) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread &t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

fs::path ResolveOntologyRef(const fs::path &dir, const std::string &ref) {
  fs::path p(ref);
  if (ref.find('/') != std::string::npos || p.extension() == ".xml") {
    return p.is_absolute() ? p : dir / p;
  }
  return dir / "kb" / (ref + ".xml");
}

fs::path ResolveResource(const fs::path &dir, const std::string &ref) {
  fs::path p(ref);
  return p.is_absolute() ? p : dir / p;
}

const LanguageProfile &ProfileFor(const ProfileSet &profiles, const Document &doc) {
  if (!doc.lang_hint.empty()) {
    if (const LanguageProfile *p = profiles.ForLanguage(doc.lang_hint)) return *p;
  }
  return profiles.ForText(doc.text);
}

std::vector<PromotedConcept> Promote(const StageContext &ctx) {
  CandidateSet ranked = ParseCandidates(ctx.Input("score"));
  return PromoteConcepts(ranked.candidates, ctx.Params(), ctx.resources.profiles);
}

void Collect(StageContext &ctx, const std::vector<std::string> &diagnostics) {
  ctx.diagnostics.insert(ctx.diagnostics.end(), diagnostics.begin(), diagnostics.end());
}

// --- stage bodies ----------------------------------------------------------

std::string RunIngest(StageContext &ctx) {
  CorpusStore store(ctx.dir, ctx.project.name);
  if (!store.Exists()) {
    throw Error(ErrorCode::kIngestFailure,
                "no corpus at " + store.corpus_dir().string() + "; ingest documents first");
  }
  Corpus corpus = store.Load();
  if (corpus.documents.empty()) throw Error(ErrorCode::kEmptyCorpus, "the corpus is empty");
  corpus.index = IndexCorpus(corpus);
  WriteFileAtomic(store.index_path(), SerializeIndex(corpus.index));
  return Serialize(CorpusManifest::FromCorpus(corpus), "corpus-store");
}

std::string RunAnalyze(StageContext &ctx) {
  const ProjectConfig &config = ctx.project.config;
  Corpus corpus = CorpusStore(ctx.dir, ctx.project.name).Load();
  CorpusManifest manifest = ParseManifest(ctx.Input("ingest"));
  std::set<std::string> keep;
  for (const ManifestEntry &e : manifest.documents) {
    if (!corpus.documents.count(e.id)) {
      throw Error(ErrorCode::kIngestFailure, "document " + e.id + " vanished from the corpus");
    }
    keep.insert(e.id);
  }
  if (!config.seeds.empty()) {
    corpus.index = IndexCorpus(corpus);
    std::set<std::string> relevant;
    for (const ScoredDocument &s : RelevanceFilter(corpus, config.seeds, config.min_relevance)) {
      if (keep.count(s.doc)) relevant.insert(s.doc);
    }
    if (relevant.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, "no document passes the relevance filter");
    }
    if (relevant.size() < keep.size()) {
      ctx.diagnostics.push_back("relevance filter kept " + std::to_string(relevant.size()) +
                                " of " + std::to_string(keep.size()) + " documents");
    }
    keep = std::move(relevant);
  }
  std::vector<const Document *> docs;
  for (const std::string &id : keep) docs.push_back(&corpus.documents.at(id));
  TokenizedCorpus out;
  out.docs.resize(docs.size());
  ParallelFor(docs.size(), config.workers, [&](size_t i) {
    out.docs[i] = Analyze(*docs[i], ProfileFor(ctx.resources.profiles, *docs[i]));
  });
  return Serialize(out, "linguistic-processor");
}

std::string RunCandidates(StageContext &ctx) {
  TokenizedCorpus docs = ParseTokenizedCorpus(ctx.Input("analyze"));
  CandidateSet set;
  set.corpus_docs = docs.docs.size();
  set.candidates = ExtractCandidates(docs.docs, ctx.project.config.max_ngram);
  return Serialize(set, "linguistic-processor");
}

std::string RunScore(StageContext &ctx) {
  CandidateSet set = ParseCandidates(ctx.Input("candidates"));
  set.candidates = ScoreCandidates(std::move(set.candidates), set.corpus_docs);
  set.ranked = true;
  return Serialize(set, "linguistic-processor");
}

std::string RunGraph(StageContext &ctx) {
  const ProjectConfig &config = ctx.project.config;
  TokenizedCorpus docs = ParseTokenizedCorpus(ctx.Input("analyze"));
  CandidateSet ranked = ParseCandidates(ctx.Input("score"));
  // The lexicon ignores curation decisions so that co-occurrence counts, and
  // therefore PMI, stay put while concepts are accepted or rejected.
  size_t limit = config.graph_lexicon ? config.graph_lexicon : 2 * config.top_k_terms;
  TermLexicon lexicon;
  for (size_t i = 0; i < ranked.candidates.size() && i < limit; ++i) {
    if (ranked.candidates[i].lemma_seq.size() > 1) lexicon.insert(ranked.candidates[i].lemma_seq);
  }
  TextGraphSet set;
  set.window = config.window;
  set.graphs.resize(docs.docs.size());
  ParallelFor(docs.docs.size(), config.workers, [&](size_t i) {
    set.graphs[i] = BuildTextGraph(docs.docs[i], config.window, lexicon);
  });
  return Serialize(set, "linguistic-processor");
}

std::string RunTaxonomic(StageContext &ctx) {
  TokenizedCorpus docs = ParseTokenizedCorpus(ctx.Input("analyze"));
  std::vector<PromotedConcept> concepts = Promote(ctx);
  ExtractionParams params = ctx.Params();
  std::vector<SemanticRelation> relations =
      ExtractTaxonomic(docs.docs, concepts, ctx.resources.patterns, params);
  relations = ApplyRelationDecisions(std::move(relations), concepts, params);
  BuildResult built = BuildOntology({ctx.project.name, ctx.Meta(), concepts, relations, {}});
  Collect(ctx, built.diagnostics);
  return Serialize(built.ontology, "knowledge-extractor");
}

std::string RunAssociative(StageContext &ctx) {
  TextGraphSet graphs = ParseTextGraphs(ctx.Input("graph"));
  Ontology taxonomy = ParseOntology(ctx.Input("taxonomic"));
  std::vector<SemanticRelation> taxonomic;
  for (const auto &[key, r] : taxonomy.relations()) taxonomic.push_back(r);
  std::vector<PromotedConcept> concepts = Promote(ctx);
  std::vector<SemanticRelation> relations =
      ExtractAssociative(graphs.graphs, concepts, ctx.Params(), taxonomic);
  BuildResult built = BuildOntology({ctx.project.name, ctx.Meta(), concepts, relations, {}});
  Collect(ctx, built.diagnostics);
  return Serialize(built.ontology, "knowledge-extractor");
}

std::string RunAssemble(StageContext &ctx) {
  std::vector<PromotedConcept> concepts = Promote(ctx);
  ExtractionParams params = ctx.Params();
  std::vector<SemanticRelation> relations;
  for (const char *stage : {"taxonomic", "associative"}) {
    Ontology part = ParseOntology(ctx.Input(stage));
    for (const auto &[key, r] : part.relations()) relations.push_back(r);
  }
  relations = ApplyRelationDecisions(std::move(relations), concepts, params);
  std::vector<Interpretation> glosses =
      AttachInterpretations(concepts, ctx.resources.dictionaries);
  BuildResult built =
      BuildOntology({ctx.project.name, ctx.Meta(), concepts, relations, glosses});
  Collect(ctx, built.diagnostics);
  return Serialize(built.ontology, "orchestrator");
}

std::string RunIntegrate(StageContext &ctx) {
  Ontology merged = ParseOntology(ctx.Input("assemble"));
  for (const std::string &ref : ctx.project.config.integrate_sources) {
    Ontology other = ParseOntology(ReadFile(ResolveOntologyRef(ctx.dir, ref)));
    AlignmentMap alignment =
        Align(merged, other, ctx.project.config.align_threshold, ctx.resources.profiles);
    MergeResult result = Merge(merged, other, alignment);
    Collect(ctx, result.diagnostics);
    merged = std::move(result.ontology);
  }
  return Serialize(merged, "ontology-integration");
}

// --- JSON helpers -----------------------------------------------------------

json StateToJson(const Project &p) {
  json stages = json::object();
  for (const auto &[id, s] : p.stages) {
    stages[id] = {{"status", std::string(StageStatusName(s.status))},
                  {"artifact", s.artifact},
                  {"digest", s.digest},
                  {"diagnostic", s.diagnostic},
                  {"iteration", s.iteration}};
  }
  return {{"iteration", p.iteration}, {"goal", std::string(GoalName(p.goal))}, {"stages", stages}};
}

json EventToJson(const ProgressEvent &e) {
  return {{"project", e.project}, {"stage", e.stage},   {"status", e.status},
          {"timestamp", e.timestamp}, {"ms", e.ms}, {"detail", e.detail}};
}

}  // namespace

std::string_view ProjectModeName(ProjectMode mode) {
  return mode == ProjectMode::kProcess ? "process" : "accumulate";
}
ProjectMode ParseProjectMode(std::string_view name) { return ParseName(name, kModes, "mode"); }
std::string_view GoalName(Goal goal) { return goal == Goal::kIntegrated ? "integrated" : "domain"; }
Goal ParseGoal(std::string_view name) { return ParseName(name, kGoals, "goal"); }
std::string_view StageStatusName(StageStatus status) {
  for (const auto &[value, text] : kStatuses) {
    if (value == status) return text;
  }
  return "pending";
}

// --- ProjectConfig ------------------------------------------------------------

ProjectConfig ProjectConfig::FromJson(std::string_view text) {
  ProjectConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  try {
    for (const auto &[key, v] : j.items()) {
      if (key == "profiles") c.profiles = v.get<std::string>();
      else if (key == "patterns") c.patterns = v.get<std::string>();
      else if (key == "dictionaries") c.dictionaries = v.get<std::vector<std::string>>();
      else if (key == "max_ngram") c.max_ngram = v.get<int>();
      else if (key == "window") c.window = v.get<int>();
      else if (key == "top_k_terms") c.top_k_terms = v.get<size_t>();
      else if (key == "graph_lexicon") c.graph_lexicon = v.get<size_t>();
      else if (key == "pmi_threshold") c.pmi_threshold = v.get<double>();
      else if (key == "min_pair_count") c.min_pair_count = v.get<size_t>();
      else if (key == "pattern_set") c.pattern_set = v.get<std::vector<std::string>>();
      else if (key == "seeds") c.seeds = v.get<std::vector<std::string>>();
      else if (key == "min_relevance") c.min_relevance = v.get<double>();
      else if (key == "align_threshold") c.align_threshold = v.get<double>();
      else if (key == "integrate_sources") c.integrate_sources = v.get<std::vector<std::string>>();
      else if (key == "url_allowlist") c.url_allowlist = v.get<std::vector<std::string>>();
      else if (key == "timestamp") c.timestamp = v.get<std::string>();
      else if (key == "workers") c.workers = v.get<int>();
      else throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config value: ") + e.what());
  }
  if (c.max_ngram < 1 || c.max_ngram > 4) {
    throw Error(ErrorCode::kInvalidArgument, "max_ngram must be in [1,4]");
  }
  if (c.window < 1) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
  if (c.top_k_terms < 1) throw Error(ErrorCode::kInvalidArgument, "top_k_terms must be >= 1");
  if (c.min_pair_count < 1) throw Error(ErrorCode::kInvalidArgument, "min_pair_count must be >= 1");
  if (!(c.align_threshold > 0 && c.align_threshold <= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "align_threshold must be in (0,1]");
  }
  if (c.workers < 0) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 0");
  return c;
}

std::string ProjectConfig::ToJson() const {
  json j = {{"profiles", profiles},
            {"patterns", patterns},
            {"dictionaries", dictionaries},
            {"max_ngram", max_ngram},
            {"window", window},
            {"top_k_terms", top_k_terms},
            {"graph_lexicon", graph_lexicon},
            {"pmi_threshold", pmi_threshold},
            {"min_pair_count", min_pair_count},
            {"pattern_set", pattern_set},
            {"seeds", seeds},
            {"min_relevance", min_relevance},
            {"align_threshold", align_threshold},
            {"integrate_sources", integrate_sources},
            {"url_allowlist", url_allowlist},
            {"timestamp", timestamp},
            {"workers", workers}};
  return j.dump(2);
}

// --- StageContext ---------------------------------------------------------

const std::string &StageContext::Input(const std::string &stage) const {
  auto it = inputs.find(stage);
  if (it == inputs.end()) {
    throw Error(ErrorCode::kStageFailure, "missing input from stage '" + stage + "'");
  }
  return it->second;
}

ExtractionParams StageContext::Params() const {
  const ProjectConfig &c = project.config;
  ExtractionParams p;
  p.top_k_terms = c.top_k_terms;
  p.pmi_threshold = c.pmi_threshold;
  p.min_pair_count = c.min_pair_count;
  p.pattern_set = c.pattern_set;
  p.decisions = decisions;
  p.iteration = project.iteration;
  return p;
}

OntologyMeta StageContext::Meta() const { return OntologyMeta{project.config.timestamp, project.name}; }

// --- registry and plan -------------------------------------------------------

StageRegistry DefaultRegistry() {
  using P = PayloadType;
  StageRegistry r;
  r["ingest"] = {{}, P::kCorpusManifest, RunIngest};
  r["analyze"] = {{{"ingest", P::kCorpusManifest}}, P::kTokenizedCorpus, RunAnalyze};
  r["candidates"] = {{{"analyze", P::kTokenizedCorpus}}, P::kCandidates, RunCandidates};
  r["score"] = {{{"candidates", P::kCandidates}}, P::kCandidates, RunScore};
  r["graph"] = {{{"analyze", P::kTokenizedCorpus}, {"score", P::kCandidates}},
                P::kTextGraphs, RunGraph};
  r["taxonomic"] = {{{"analyze", P::kTokenizedCorpus}, {"score", P::kCandidates}},
                    P::kOntology, RunTaxonomic};
  r["associative"] = {{{"graph", P::kTextGraphs},
                       {"taxonomic", P::kOntology},
                       {"score", P::kCandidates}},
                      P::kOntology, RunAssociative};
  r["assemble"] = {{{"taxonomic", P::kOntology},
                    {"associative", P::kOntology},
                    {"score", P::kCandidates}},
                   P::kOntology, RunAssemble};
  r["integrate"] = {{{"assemble", P::kOntology}}, P::kOntology, RunIntegrate};
  return r;
}

std::vector<std::string> GoalStages(Goal goal) {
  std::vector<std::string> stages = AllStages();
  if (goal == Goal::kDomain) stages.pop_back();
  return stages;
}

std::vector<std::string> Plan(const StageRegistry &registry, Goal goal,
                              const ProjectConfig &config) {
  if (goal == Goal::kIntegrated && config.integrate_sources.empty()) {
    throw Error(ErrorCode::kPlanError,
                "the integrated goal needs at least one further source ontology "
                "(config key integrate_sources)");
  }
  std::vector<std::string> stages = GoalStages(goal);
  std::set<std::string> members(stages.begin(), stages.end());
  std::map<std::string, std::set<std::string>> preds;
  for (const std::string &s : stages) {
    auto it = registry.find(s);
    if (it == registry.end()) {
      throw Error(ErrorCode::kPlanError, "no module bound to stage '" + s + "'");
    }
    preds[s];
    for (const StageInput &in : it->second.inputs) {
      if (!members.count(in.stage) || !registry.count(in.stage)) {
        throw Error(ErrorCode::kPlanError, "stage '" + s + "' reads from '" + in.stage +
                                               "', which is not bound in this plan");
      }
      PayloadType produced = registry.at(in.stage).output;
      if (produced != in.type) {
        throw Error(ErrorCode::kPlanError,
                    "stage '" + s + "' expects " + std::string(PayloadTypeName(in.type)) +
                        " from '" + in.stage + "', but '" + in.stage + "' produces " +
                        std::string(PayloadTypeName(produced)));
      }
      preds[s].insert(in.stage);
    }
  }
  std::vector<std::string> order;
  std::set<std::string> done;
  while (order.size() < stages.size()) {
    std::string next;
    for (const std::string &s : members) {  // lexicographic
      if (done.count(s)) continue;
      bool ready = std::all_of(preds[s].begin(), preds[s].end(),
                               [&](const std::string &p) { return done.count(p) > 0; });
      if (ready) {
        next = s;
        break;
      }
    }
    if (next.empty()) throw Error(ErrorCode::kPlanError, "the stage graph has a cycle");
    done.insert(next);
    order.push_back(next);
  }
  return order;
}

// --- Workspace ----------------------------------------------------------------

fs::path Workspace::Home() {
  const char *home = std::getenv("ONTOFORGE_HOME");
  return home && *home ? fs::path(home) : fs::path("./project");
}

fs::path Workspace::Resolve(std::string_view project) {
  if (project.find('/') != std::string_view::npos) return fs::path(project);
  return Home() / fs::path(project);
}

Workspace Workspace::Create(const fs::path &dir, ProjectMode mode, ProjectConfig config) {
  if (fs::exists(dir / "project.json")) {
    throw Error(ErrorCode::kInvalidArgument, "a project already exists at " + dir.string());
  }
  fs::create_directories(dir);
  Workspace ws(dir);
  std::string name = fs::absolute(dir).lexically_normal().filename().string();
  if (name.empty()) name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  json project = {{"name", name},
                  {"mode", std::string(ProjectModeName(mode))},
                  {"config", json::parse(config.ToJson())}};
  WriteFileAtomic(dir / "project.json", project.dump(2) + "\n");
  Project p;
  p.name = name;
  p.mode = mode;
  p.config = std::move(config);
  for (const std::string &s : AllStages()) p.stages[s];
  ws.SaveState(p);
  ws.Emit("project", "created", std::string(ProjectModeName(mode)));
  return ws;
}

Workspace Workspace::Open(const fs::path &dir) {
  if (!fs::exists(dir / "project.json")) {
    throw Error(ErrorCode::kNotFound, "no project at " + dir.string());
  }
  return Workspace(dir);
}

Project Workspace::Load() const {
  Project p;
  try {
    json project = json::parse(ReadFile(dir_ / "project.json"));
    p.name = project.at("name").get<std::string>();
    p.mode = ParseProjectMode(project.at("mode").get<std::string>());
    p.config = ProjectConfig::FromJson(project.value("config", json::object()).dump());
    if (fs::exists(dir_ / "state.json")) {
      json state = json::parse(ReadFile(dir_ / "state.json"));
      p.iteration = state.at("iteration").get<int>();
      p.goal = ParseGoal(state.value("goal", "domain"));
      for (const auto &[id, s] : state.at("stages").items()) {
        StageState st;
        st.status = ParseName(s.at("status").get<std::string>(), kStatuses, "stage status");
        st.artifact = s.value("artifact", "");
        st.digest = s.value("digest", "");
        st.diagnostic = s.value("diagnostic", "");
        st.iteration = s.value("iteration", 0);
        p.stages[id] = st;
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kIoError, "corrupt project files in " + dir_.string() + ": " + e.what());
  }
  for (const std::string &s : AllStages()) p.stages[s];
  return p;
}

void Workspace::SaveConfig(const ProjectConfig &config) {
  ProjectLock lock(dir_);
  json project = json::parse(ReadFile(dir_ / "project.json"));
  project["config"] = json::parse(config.ToJson());
  WriteFileAtomic(dir_ / "project.json", project.dump(2) + "\n");
  Emit("project", "configured", "");
}

void Workspace::SaveState(const Project &project) const {
  WriteFileAtomic(dir_ / "state.json", StateToJson(project).dump(2) + "\n");
}

void Workspace::Emit(const std::string &stage, std::string_view status, std::string detail) const {
  std::lock_guard<std::mutex> guard(EventMutex());
  fs::path path = dir_ / "events.jsonl";
  long long last = 0;
  std::string line = LastLine(path);
  if (!line.empty()) {
    try {
      last = json::parse(line).at("ms").get<long long>();
    } catch (const json::exception &) {
      last = 0;
    }
  }
  long long now = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  ProgressEvent e;
  e.project = fs::absolute(dir_).lexically_normal().filename().string();
  e.stage = stage;
  e.status = std::string(status);
  e.ms = std::max(now, last + 1);
  e.timestamp = IsoFromMs(e.ms);
  e.detail = std::move(detail);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << EventToJson(e).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "cannot append to " + path.string());
}

std::vector<ProgressEvent> Workspace::Events() const {
  std::vector<ProgressEvent> out;
  std::ifstream in(dir_ / "events.jsonl", std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      out.push_back({j.value("project", ""), j.value("stage", ""), j.value("status", ""),
                     j.value("timestamp", ""), j.value("ms", 0LL), j.value("detail", "")});
    } catch (const json::exception &) {
      // A torn final line from a crash; skip it.
    }
  }
  return out;
}

Resources Workspace::LoadResources(const ProjectConfig &config) const {
  Resources r;
  r.profiles = config.profiles == "builtin"
                   ? DefaultProfiles()
                   : ProfileSet::LoadDirectory(ResolveResource(dir_, config.profiles));
  if (r.profiles.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no language profiles found at " + config.profiles);
  }
  r.patterns = config.patterns == "builtin"
                   ? DefaultPatterns()
                   : LoadPatterns(ResolveResource(dir_, config.patterns));
  for (const std::string &d : config.dictionaries) {
    if (d == "builtin") {
      for (DictionarySource &s : DefaultDictionaries()) r.dictionaries.push_back(std::move(s));
    } else {
      r.dictionaries.push_back(DictionarySource::Load(ResolveResource(dir_, d)));
    }
  }
  return r;
}

IngestResult Workspace::Ingest(const std::vector<std::string> &sources) {
  ProjectLock lock(dir_);
  Project p = Load();
  CorpusStore store(dir_, p.name);
  Corpus corpus = store.Exists() ? store.Load() : Corpus{p.name, {}, {}};
  IngestOptions options;
  options.url_allowlist = p.config.url_allowlist;
  IngestResult result = ontoforge::Ingest(corpus, sources, options);
  for (const IngestDiagnostic &d : result.diagnostics) Emit("ingest", "warning", d.source + ": " + d.message);
  if (!result.added.empty() || !store.Exists()) {
    corpus.index = IndexCorpus(corpus);
    store.Save(corpus);
    for (auto &[id, st] : p.stages) st = StageState{};
    SaveState(p);
  }
  Emit("ingest", "updated",
       std::to_string(result.added.size()) + " added, " +
           std::to_string(result.duplicates.size()) + " duplicates");
  return result;
}

Project Workspace::Run(Goal goal) {
  ProjectLock lock(dir_);
  return RunLocked(goal);
}

Project Workspace::RunLocked(Goal goal) {
  Project p = Load();
  p.goal = goal;
  std::vector<std::string> order = Plan(registry_, goal, p.config);
  Emit("plan", "done", Join(order, ","));

  // Successor closure, for resetting stages downstream of a lost artifact.
  std::map<std::string, std::set<std::string>> successors;
  for (const std::string &s : order) {
    for (const StageInput &in : registry_.at(s).inputs) successors[in.stage].insert(s);
  }
  std::function<void(const std::string &)> reset = [&](const std::string &s) {
    if (p.stages[s].status == StageStatus::kPending) return;
    p.stages[s] = StageState{};
    for (const std::string &next : successors[s]) reset(next);
  };
  for (const std::string &s : order) {
    const StageState &st = p.stages[s];
    if (st.status == StageStatus::kDone && !fs::exists(dir_ / st.artifact)) {
      Emit(s, "reset", "artifact " + st.artifact + " is missing");
      reset(s);
    }
  }
  SaveState(p);

  std::optional<Resources> resources;
  std::vector<CurationDecision> decisions = Decisions();
  for (const std::string &s : order) {
    StageState &st = p.stages[s];
    if (st.status == StageStatus::kDone) continue;
    const StageBinding &binding = registry_.at(s);
    st = StageState{StageStatus::kRunning, "", "", "", p.iteration};
    SaveState(p);
    Emit(s, "running", "iteration " + std::to_string(p.iteration));
    try {
      if (!resources) resources = LoadResources(p.config);
      StageContext ctx{p, dir_, *resources, decisions, {}, {}};
      for (const StageInput &in : binding.inputs) {
        const StageState &source = p.stages[in.stage];
        if (source.status != StageStatus::kDone) {
          throw Error(ErrorCode::kStageFailure, "input stage '" + in.stage + "' is not done");
        }
        ctx.inputs[in.stage] = ReadFile(dir_ / source.artifact);
      }
      std::string bytes = binding.run(ctx);
      if (ReadEnvelope(bytes).type != binding.output) {
        throw Error(ErrorCode::kStageFailure, "stage produced the wrong payload type");
      }
      std::string rel = "bus/" + std::to_string(p.iteration) + "/" + s + ".xml";
      WriteFileAtomic(dir_ / rel, bytes);
      st = StageState{StageStatus::kDone, rel, Sha256Hex(bytes), "", p.iteration};
      constexpr size_t kMaxWarnings = 20;
      for (size_t i = 0; i < ctx.diagnostics.size() && i < kMaxWarnings; ++i) {
        Emit(s, "warning", ctx.diagnostics[i]);
      }
      if (ctx.diagnostics.size() > kMaxWarnings) {
        Emit(s, "warning",
             std::to_string(ctx.diagnostics.size() - kMaxWarnings) + " more diagnostics");
      }
      if (s == "assemble" || s == "integrate") {
        Ontology o = ParseOntology(bytes);
        WriteFileAtomic(KbPath(o.name()), bytes);
      }
    } catch (const std::exception &e) {
      st = StageState{StageStatus::kFailed, "", "", e.what(), p.iteration};
      SaveState(p);
      Emit(s, "failed", e.what());
      throw Error(ErrorCode::kStageFailure, "stage '" + s + "' failed: " + e.what());
    }
    SaveState(p);
    Emit(s, "done", st.digest.substr(0, 16));
  }
  return p;
}

std::vector<CurationDecision> Workspace::Decisions() const {
  fs::path path = dir_ / "decisions.xml";
  if (!fs::exists(path)) return {};
  return ParseDecisions(ReadFile(path)).decisions;
}

namespace {

std::vector<CurationDecision> Append(const fs::path &dir, const Project &p,
                                     std::vector<CurationDecision> existing,
                                     std::vector<CurationDecision> incoming) {
  std::vector<CurationDecision> added;
  for (CurationDecision &d : incoming) {
    d.iteration = p.iteration + 1;
    char id[32];
    std::snprintf(id, sizeof id, "d%06zu", existing.size() + 1);
    d.id = id;
    if (d.at.empty()) d.at = NowTimestamp();
    CheckDecision(d);
    existing.push_back(d);
    added.push_back(std::move(d));
  }
  WriteFileAtomic(dir / "decisions.xml", Serialize(DecisionSet{existing}, "orchestrator"));
  return added;
}

bool TermKnown(const std::string &term, const std::vector<TermCandidate> &ranked,
               const ProfileSet &profiles) {
  std::string normalized = Normalize(term);
  std::string lemma_key = LemmaKey(profiles.LemmaSequence(term));
  return std::any_of(ranked.begin(), ranked.end(), [&](const TermCandidate &c) {
    return c.surface_example == normalized || c.key() == lemma_key || c.key() == normalized;
  });
}

bool RelationKnown(const CurationDecision &d, const Ontology &o) {
  const Concept *s = o.FindByLabel(d.source);
  const Concept *t = o.FindByLabel(d.target);
  if (!s || !t) return false;
  for (const auto &[key, r] : o.relations()) {
    if (key.source == s->id && key.target == t->id && key.type.tag() == d.rel_type) return true;
  }
  return false;
}

}  // namespace

std::vector<CurationDecision> Workspace::PostDecisions(std::vector<CurationDecision> decisions) {
  ProjectLock lock(dir_);
  Project p = Load();
  std::vector<CurationDecision> added = Append(dir_, p, Decisions(), std::move(decisions));
  Emit("decisions", "posted",
       std::to_string(added.size()) + " for iteration " + std::to_string(p.iteration + 1));
  return added;
}

IterateResult Workspace::Iterate(std::vector<CurationDecision> decisions) {
  ProjectLock lock(dir_);
  Project p = Load();
  if (!fs::exists(dir_ / "bus" / std::to_string(p.iteration) / "assemble.xml") &&
      p.stages["assemble"].status != StageStatus::kDone) {
    throw Error(ErrorCode::kInvalidArgument,
                "iterate needs a completed assemble stage; run the project first");
  }
  Append(dir_, p, Decisions(), std::move(decisions));
  int next = p.iteration + 1;

  IterateResult result{p, {}};
  std::optional<std::vector<TermCandidate>> ranked;
  std::optional<Ontology> ontology;
  try {
    ranked = ParseCandidates(Artifact("score")).candidates;
    ontology = FinalOntology();
  } catch (const Error &) {
    // Nothing to check against; every decision is taken at face value.
  }
  ProfileSet profiles = LoadResources(p.config).profiles;
  for (const CurationDecision &d : Decisions()) {
    if (d.iteration != next) continue;
    bool known = true;
    if (d.target_kind == DecisionTarget::kTerm && ranked) {
      known = TermKnown(d.term, *ranked, profiles);
    } else if (d.target_kind == DecisionTarget::kRelation && ontology) {
      known = RelationKnown(d, *ontology);
    }
    if (!known) result.warnings.push_back("decision " + d.id + " names unknown target " + d.TargetKey());
  }
  for (const std::string &w : result.warnings) Emit("iterate", "warning", w);

  p.iteration = next;
  for (const std::string &s : CurationStages()) p.stages[s] = StageState{};
  SaveState(p);
  Emit("iterate", "started", "iteration " + std::to_string(next));
  result.project = RunLocked(p.goal);
  return result;
}

std::string Workspace::Artifact(std::string_view stage, std::optional<int> iteration) const {
  Project p = Load();
  int from = iteration.value_or(p.iteration);
  if (from < 0 || from > p.iteration) {
    throw Error(ErrorCode::kNotFound, "no iteration " + std::to_string(from));
  }
  for (int k = from; k >= 0; --k) {
    fs::path path = dir_ / "bus" / std::to_string(k) / (std::string(stage) + ".xml");
    if (fs::exists(path)) return ReadFile(path);
  }
  throw Error(ErrorCode::kNotFound, "no " + std::string(stage) + " artifact for iteration " +
                                        std::to_string(from));
}

Ontology Workspace::FinalOntology(std::optional<int> iteration) const {
  Project p = Load();
  int from = iteration.value_or(p.iteration);
  if (from < 0 || from > p.iteration) {
    throw Error(ErrorCode::kNotFound, "no iteration " + std::to_string(from));
  }
  for (int k = from; k >= 0; --k) {
    fs::path bus = dir_ / "bus" / std::to_string(k);
    for (const char *stage : {"integrate", "assemble"}) {
      if (fs::exists(bus / (std::string(stage) + ".xml"))) {
        return ParseOntology(ReadFile(bus / (std::string(stage) + ".xml")));
      }
    }
  }
  throw Error(ErrorCode::kNotFound, "no ontology for iteration " + std::to_string(from));
}

std::string Workspace::Export(std::string_view format, std::optional<int> iteration) const {
  Ontology o = FinalOntology(iteration);
  if (format == "xml") return Serialize(o, "orchestrator");
  if (format == "ttl") return ExportTurtle(o);
  throw Error(ErrorCode::kInvalidArgument, "unknown export format '" + std::string(format) + "'");
}

Ontology Workspace::LoadOntologyRef(const std::string &ref) const {
  fs::path path = ResolveOntologyRef(dir_, ref);
  if (!fs::exists(path)) throw Error(ErrorCode::kNotFound, "no ontology at " + path.string());
  return ParseOntology(ReadFile(path));
}

MergeResult Workspace::MergeStored(const std::string &left, const std::string &right) {
  ProjectLock lock(dir_);
  Project p = Load();
  if (p.mode != ProjectMode::kProcess) {
    throw Error(ErrorCode::kInvalidArgument, "merge needs a project in process mode");
  }
  Ontology a = LoadOntologyRef(left);
  Ontology b = LoadOntologyRef(right);
  ProfileSet profiles = LoadResources(p.config).profiles;
  MergeResult result = Merge(a, b, Align(a, b, p.config.align_threshold, profiles));
  WriteFileAtomic(KbPath(result.ontology.name()), Serialize(result.ontology, "ontology-integration"));
  for (const std::string &d : result.diagnostics) Emit("merge", "warning", d);
  Emit("merge", "done", result.ontology.name());
  return result;
}

ProfileSet Workspace::Profiles() const { return LoadResources(Load().config).profiles; }

bool Workspace::Busy() const {
  try {
    ProjectLock probe(dir_);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kBusy) return true;
    throw;
  }
  return false;
}

fs::path Workspace::KbPath(std::string_view name) const {
  std::string file(name);
  std::replace(file.begin(), file.end(), '/', '_');
  return dir_ / "kb" / (file + ".xml");
}

}  // namespace ontoforge
