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

// Unicode text helpers shared by every stage of the pipeline. All strings are
// UTF-8; offsets reported to callers are code point offsets.

#ifndef ONTOFORGE_TEXT_H_
#define ONTOFORGE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ontoforge {

// NFC, lowercase, whitespace runs collapsed to one space, trimmed.
// Idempotent.
std::string Normalize(std::string_view text);

// NFC + lowercase only, for single tokens.
std::string FoldCase(std::string_view text);

bool IsValidUtf8(std::string_view bytes);

// Decodes Windows-1251 bytes into UTF-8.
std::string Cp1251ToUtf8(std::string_view bytes);

size_t CodePointCount(std::string_view text);

// A word-like segment of a text, as found by Unicode word boundary analysis.
// Apostrophe-internal words stay whole.
struct WordSpan {
  std::string text;
  size_t begin = 0;  // code points
  size_t end = 0;
  // True if the gap between the previous word (or text start) and this word
  // contains sentence-terminal punctuation or a blank line.
  bool starts_sentence = false;
};

std::vector<WordSpan> SplitWords(std::string_view text);

// Normalized word tokens of a text, in order.
std::vector<std::string> WordTokens(std::string_view text);

// True if any letter in the text is Cyrillic.
bool HasCyrillic(std::string_view text);

struct ScriptCounts {
  size_t latin = 0;
  size_t cyrillic = 0;
};
ScriptCounts CountLetters(std::string_view text);

// Letters and digits kept, every other run folded to a single '-'.
std::string Slug(std::string_view normalized);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);
std::vector<std::string> SplitOn(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

// UTC wall clock, ISO 8601 with milliseconds.
std::string NowTimestamp();

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);
double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

}  // namespace ontoforge

#endif  // ONTOFORGE_TEXT_H_
