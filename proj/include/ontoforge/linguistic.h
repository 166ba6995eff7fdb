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

// Tokenization, term-candidate extraction and ranking, and per-document
// co-occurrence graphs.

#ifndef ONTOFORGE_LINGUISTIC_H_
#define ONTOFORGE_LINGUISTIC_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoforge/corpus.h"
#include "ontoforge/ontology.h"

namespace ontoforge {

// Stopwords, suffixes for stripping, and endings that mark process nouns.
//
// File format (UTF-8, one entry per line, '#' starts a comment):
//
//   [meta]
//   language = en
//   script = latin
//   min_stem = 3
//   [stopwords]
//   the
//   [suffixes]
//   ing
//   [process_markers]
//   tion
class LanguageProfile {
 public:
  static LanguageProfile Parse(std::string_view text);
  static LanguageProfile Load(const std::filesystem::path &path);

  const std::string &language() const { return language_; }
  const std::string &script() const { return script_; }

  // Arguments are case-folded words.
  bool IsStopword(std::string_view word) const;
  // Strips the longest listed suffix that leaves at least min_stem code
  // points.
  std::string Stem(std::string_view word) const;
  bool IsProcessWord(std::string_view word) const;

  const std::set<std::string> &stopwords() const { return stopwords_; }
  const std::vector<std::string> &suffixes() const { return suffixes_; }

 private:
  std::string language_ = "en";
  std::string script_ = "latin";
  size_t min_stem_ = 3;
  std::set<std::string, std::less<>> stopwords_lookup_;
  std::set<std::string> stopwords_;
  std::vector<std::string> suffixes_;  // longest first
  std::vector<std::string> process_markers_;
};

// Picks a profile by the script of a word or text.
class ProfileSet {
 public:
  ProfileSet() = default;
  explicit ProfileSet(std::vector<LanguageProfile> profiles);

  // Loads every *.profile file in a directory, sorted by file name.
  static ProfileSet LoadDirectory(const std::filesystem::path &dir);

  bool empty() const { return profiles_.empty(); }
  const std::vector<LanguageProfile> &profiles() const { return profiles_; }

  const LanguageProfile *ForLanguage(std::string_view language) const;
  // Cyrillic text selects a cyrillic-script profile, anything else a latin
  // one; falls back to the first profile.
  const LanguageProfile &ForText(std::string_view text) const;

  // Case-folds, tokenizes and stems a phrase, choosing a profile per word.
  std::vector<std::string> LemmaSequence(std::string_view phrase) const;

 private:
  std::vector<LanguageProfile> profiles_;
};

struct Token {
  std::string surface;
  std::string norm;  // case-folded and suffix-stripped
  size_t begin = 0;  // code points into the document text
  size_t end = 0;
  bool is_stopword = false;
  bool operator==(const Token &) const = default;
};

struct TokenizedDoc {
  std::string doc;
  std::string language;
  std::vector<std::vector<Token>> sentences;
  bool operator==(const TokenizedDoc &) const = default;
};

// Sentences end at terminal punctuation or a blank line; tokens follow
// Unicode word boundaries.
TokenizedDoc Analyze(const Document &doc, const LanguageProfile &profile);

struct CandidateScores {
  double tfidf = 0;
  double cvalue = 0;
  bool operator==(const CandidateScores &) const = default;
};

struct TermCandidate {
  std::vector<std::string> lemma_seq;
  std::string surface_example;  // most frequent case-folded surface form
  size_t freq = 0;
  size_t doc_freq = 0;
  std::set<std::string> nested_in;  // keys of longer candidates
  std::optional<CandidateScores> scores;
  std::vector<Span> occurrences;  // sorted

  // Lemmas joined by single spaces.
  std::string key() const;
  bool operator==(const TermCandidate &) const = default;
};

std::string LemmaKey(const std::vector<std::string> &lemmas);

// Contiguous n-grams (1..max_ngram) inside one sentence whose first and last
// tokens are not stopwords. Sorted by key. Throws invalid-argument unless
// max_ngram is in [1,4].
std::vector<TermCandidate> ExtractCandidates(const std::vector<TokenizedDoc> &docs,
                                             int max_ngram = 3);

// Sum of unigram frequencies: the token count that tf-idf is relative to.
size_t CandidateTokenCount(const std::vector<TermCandidate> &candidates);

// tfidf = freq / candidate tokens * ln(num_docs / doc_freq);
// cvalue = ln(1 + |t|) * freq, less the mean frequency of the candidates
// that nest t. Ranked by cvalue desc, tfidf desc, then lemmas.
std::vector<TermCandidate> ScoreCandidates(std::vector<TermCandidate> candidates,
                                           size_t num_docs);

// Total order used for ranking; true if a ranks before b.
bool RanksBefore(const TermCandidate &a, const TermCandidate &b);

// Multiword terms recognized as single graph nodes.
using TermLexicon = std::set<std::vector<std::string>>;

struct TextGraph {
  std::string doc;
  std::set<std::string> nodes;
  // Undirected: the key pair is ordered (first < second).
  std::map<std::pair<std::string, std::string>, size_t> edges;

  size_t Lookup(const std::string &a, const std::string &b) const;
  bool operator==(const TextGraph &) const = default;
};

// Counts each unordered pair of distinct non-stopword units at most `window`
// units apart within a sentence. Stopwords are removed before windowing.
// Lexicon terms, matched greedily longest-first, become single units keyed
// by their lemma key. Throws invalid-argument for window < 1.
TextGraph BuildTextGraph(const TokenizedDoc &doc, int window,
                         const TermLexicon &lexicon = {});

}  // namespace ontoforge

#endif  // ONTOFORGE_LINGUISTIC_H_
