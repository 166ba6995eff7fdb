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

#include "ontoforge/defaults.h"

#include <filesystem>
#include <string>

namespace ontoforge {

namespace {

bool Under(std::string_view path, std::string_view dir, std::string_view ext) {
  return path.substr(0, dir.size()) == dir && path.size() > ext.size() &&
         path.substr(path.size() - ext.size()) == ext;
}

}  // namespace

ProfileSet DefaultProfiles() {
  std::vector<LanguageProfile> profiles;
  for (const EmbeddedFile &f : EmbeddedFiles()) {
    if (Under(f.path, "profiles/", ".profile")) profiles.push_back(LanguageProfile::Parse(f.content));
  }
  return ProfileSet(std::move(profiles));
}

std::vector<LexicalPattern> DefaultPatterns() {
  for (const EmbeddedFile &f : EmbeddedFiles()) {
    if (f.path == "patterns.tsv") return ParsePatterns(f.content);
  }
  return {};
}

std::vector<DictionarySource> DefaultDictionaries() {
  std::vector<DictionarySource> out;
  for (const EmbeddedFile &f : EmbeddedFiles()) {
    if (Under(f.path, "dictionaries/", ".tsv")) {
      std::string id = std::filesystem::path(f.path).stem().string();
      out.push_back(DictionarySource::Parse(id, f.content));
    }
  }
  return out;
}

}  // namespace ontoforge
