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

// The HTTP API consumed by the curation UI. Bodies are JSON mirrors of the
// XML payloads: attributes become string fields and child elements become
// arrays keyed by element name (container elements such as <concepts>
// collapse into a single array).
//
//   GET  /api/project                 state, config and progress events
//   GET  /api/candidates?iteration=n  ranked candidates with current verdicts
//   GET  /api/ontology?iteration=n    final ontology of an iteration
//   POST /api/decisions               {"decisions": [...]} for the next iteration
//   POST /api/iterate                 starts the next iteration in the background
//   GET  /api/graph?iteration=n       node-link view of the ontograph
//
// Errors carry {"code": "...", "message": "..."}.

#ifndef ONTOFORGE_API_H_
#define ONTOFORGE_API_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include "ontoforge/orchestrator.h"
#include "ontoforge/xml.h"

namespace ontoforge {

struct ApiResponse {
  int status = 200;
  std::string body;
};

class ApiHandler {
 public:
  explicit ApiHandler(std::filesystem::path project_dir);
  ~ApiHandler();
  ApiHandler(const ApiHandler &) = delete;
  ApiHandler &operator=(const ApiHandler &) = delete;

  ApiResponse Handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string> &query,
                     std::string_view body);

  // Blocks until a background iteration, if any, has finished.
  void Wait();

 private:
  ApiResponse Project();
  ApiResponse Candidates(const std::map<std::string, std::string> &query);
  ApiResponse OntologyView(const std::map<std::string, std::string> &query);
  ApiResponse Graph(const std::map<std::string, std::string> &query);
  ApiResponse PostDecisions(std::string_view body);
  ApiResponse StartIterate();

  std::filesystem::path dir_;
  std::mutex mutex_;
  std::thread worker_;
  bool running_ = false;
  std::string last_error_;
};

// JSON mirror of an XML payload element.
std::string XmlToJson(const XmlElement &element);

// Serves the API until the process is stopped. Throws io-error if the port
// cannot be bound.
void Serve(const std::filesystem::path &project_dir, int port,
           const std::string &host = "127.0.0.1");

}  // namespace ontoforge

#endif  // ONTOFORGE_API_H_
