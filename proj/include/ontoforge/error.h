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

#ifndef ONTOFORGE_ERROR_H_
#define ONTOFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontoforge {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownConcept,
  kCycleViolation,
  kEmptyCorpus,
  kIngestFailure,
  kParseError,
  kIntegrityError,
  kValidationError,
  kPlanError,
  kBusy,
  kStageFailure,
  kNotFound,
  kIoError,
};

// Machine-readable name used in diagnostics and HTTP error bodies,
// e.g. "cycle-violation".
std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error (or a subclass carrying extra
// structured detail). Violations found by validation are data, not errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return ErrorCodeName(code_); }

  // Per-item causes: offending elements, per-source failures, etc.
  const std::vector<std::string> &details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

// Raised when a hierarchical edge would close a cycle. The path starts at the
// rejected edge's source and follows existing edges from its target back
// towards the source.
class CycleError : public Error {
 public:
  CycleError(const std::string &message, std::vector<std::string> path)
      : Error(ErrorCode::kCycleViolation, message, path), path_(std::move(path)) {}

  const std::vector<std::string> &path() const { return path_; }

 private:
  std::vector<std::string> path_;
};

// Malformed input with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line, int column)
      : Error(ErrorCode::kParseError,
              message + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ontoforge

#endif  // ONTOFORGE_ERROR_H_
