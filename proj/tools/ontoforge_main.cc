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

// ontoforge: command-line front end for projects.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ontoforge/api.h"
#include "ontoforge/corpus.h"
#include "ontoforge/error.h"
#include "ontoforge/interchange.h"
#include "ontoforge/orchestrator.h"

namespace fs = std::filesystem;
using namespace ontoforge;

namespace {

// Directories contribute their regular files, in name order.
std::vector<std::string> ExpandSources(const std::vector<std::string> &inputs) {
  std::vector<std::string> out;
  for (const std::string &in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> files;
      for (const auto &entry : fs::recursive_directory_iterator(in)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

void PrintStages(const Project &p) {
  for (const std::string &s : GoalStages(p.goal)) {
    const StageState &st = p.stages.at(s);
    std::cout << "  " << s << ": " << StageStatusName(st.status);
    if (!st.artifact.empty()) std::cout << " " << st.artifact;
    if (!st.diagnostic.empty()) std::cout << " (" << st.diagnostic << ")";
    std::cout << "\n";
  }
}

void WriteOutput(const std::string &path, const std::string &bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
  } else {
    WriteFileAtomic(path, bytes);
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"OntoForge: build domain ontologies from document corpora"};
  app.require_subcommand(1);

  std::string project, mode = "accumulate", config_file, goal = "domain", decisions_file,
                       format = "xml", output, host = "127.0.0.1", left, right;
  std::vector<std::string> paths;
  int port = 8080;
  std::optional<int> iteration;

  CLI::App *cmd_new = app.add_subcommand("new", "Create a project");
  cmd_new->add_option("project", project, "Project name or directory")->required();
  cmd_new->add_option("--mode", mode, "accumulate or process")
      ->check(CLI::IsMember({"accumulate", "process"}));
  cmd_new->add_option("--config", config_file, "JSON file with config keys");

  CLI::App *cmd_ingest = app.add_subcommand("ingest", "Add documents to the corpus");
  cmd_ingest->add_option("project", project)->required();
  cmd_ingest->add_option("paths", paths, "Files, directories or allowlisted URLs")->required();

  CLI::App *cmd_run = app.add_subcommand("run", "Run the pipeline");
  cmd_run->add_option("project", project)->required();
  cmd_run->add_option("--goal", goal)->check(CLI::IsMember({"domain", "integrated"}));

  CLI::App *cmd_iterate = app.add_subcommand("iterate", "Apply curation decisions and rerun");
  cmd_iterate->add_option("project", project)->required();
  cmd_iterate->add_option("--decisions", decisions_file, "Decisions XML")->required();

  CLI::App *cmd_merge = app.add_subcommand("merge", "Align and merge two stored ontologies");
  cmd_merge->add_option("project", project)->required();
  cmd_merge->add_option("left", left, "kb name or ontology file")->required();
  cmd_merge->add_option("right", right, "kb name or ontology file")->required();

  CLI::App *cmd_export = app.add_subcommand("export", "Write the final ontology");
  cmd_export->add_option("project", project)->required();
  cmd_export->add_option("--format", format)->check(CLI::IsMember({"xml", "ttl"}));
  cmd_export->add_option("--iteration", iteration);
  cmd_export->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App *cmd_serve = app.add_subcommand("serve", "Serve the HTTP API");
  cmd_serve->add_option("project", project)->required();
  cmd_serve->add_option("--port", port)->check(CLI::Range(1, 65535));
  cmd_serve->add_option("--host", host);

  CLI::App *cmd_status = app.add_subcommand("status", "Show stage states");
  cmd_status->add_option("project", project)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    fs::path dir = Workspace::Resolve(project);
    if (cmd_new->parsed()) {
      ProjectConfig config;
      if (!config_file.empty()) config = ProjectConfig::FromJson(ReadFile(config_file));
      Workspace::Create(dir, ParseProjectMode(mode), config);
      std::cout << "created " << dir.string() << "\n";
    } else if (cmd_ingest->parsed()) {
      IngestResult r = Workspace::Open(dir).Ingest(ExpandSources(paths));
      for (const IngestDiagnostic &d : r.diagnostics) {
        std::cerr << "warning: " << d.source << ": " << d.message << "\n";
      }
      std::cout << r.added.size() << " added, " << r.duplicates.size() << " duplicates\n";
    } else if (cmd_run->parsed()) {
      Project p = Workspace::Open(dir).Run(ParseGoal(goal));
      std::cout << p.name << " iteration " << p.iteration << "\n";
      PrintStages(p);
    } else if (cmd_iterate->parsed()) {
      DecisionSet set = ParseDecisions(ReadFile(decisions_file));
      IterateResult r = Workspace::Open(dir).Iterate(std::move(set.decisions));
      for (const std::string &w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << r.project.name << " iteration " << r.project.iteration << "\n";
      PrintStages(r.project);
    } else if (cmd_merge->parsed()) {
      Workspace ws = Workspace::Open(dir);
      MergeResult r = ws.MergeStored(left, right);
      for (const std::string &d : r.diagnostics) std::cerr << "warning: " << d << "\n";
      std::cout << "merged " << r.ontology.concepts().size() << " concepts, "
                << r.ontology.relations().size() << " relations into "
                << ws.KbPath(r.ontology.name()).string() << "\n";
    } else if (cmd_export->parsed()) {
      WriteOutput(output, Workspace::Open(dir).Export(format, iteration));
    } else if (cmd_serve->parsed()) {
      std::cerr << "serving " << dir.string() << " on http://" << host << ":" << port << "\n";
      Serve(dir, port, host);
    } else if (cmd_status->parsed()) {
      Project p = Workspace::Open(dir).Load();
      std::cout << p.name << " (" << ProjectModeName(p.mode) << ") iteration " << p.iteration
                << "\n";
      PrintStages(p);
    }
  } catch (const Error &e) {
    std::cerr << "ontoforge: " << e.code_name() << ": " << e.what() << "\n";
    for (const std::string &d : e.details()) std::cerr << "  " << d << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "ontoforge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
