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

// Built-in language profiles, lexical patterns and dictionaries. The files
// under data/ are compiled into the library so a fresh project runs without
// any external resources.

#ifndef ONTOFORGE_DEFAULTS_H_
#define ONTOFORGE_DEFAULTS_H_

#include <string_view>
#include <vector>

#include "ontoforge/extractor.h"
#include "ontoforge/linguistic.h"

namespace ontoforge {

struct EmbeddedFile {
  std::string_view path;  // relative to data/, e.g. "profiles/en.profile"
  std::string_view content;
};

const std::vector<EmbeddedFile> &EmbeddedFiles();

ProfileSet DefaultProfiles();
std::vector<LexicalPattern> DefaultPatterns();
std::vector<DictionarySource> DefaultDictionaries();

}  // namespace ontoforge

#endif  // ONTOFORGE_DEFAULTS_H_
