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

// Document ingestion, the content-addressed corpus store and its inverted
// index.

#ifndef ONTOFORGE_CORPUS_H_
#define ONTOFORGE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ontoforge {

struct Document {
  std::string id;  // first 16 hex digits of SHA-256(text)
  std::string uri;
  std::string title;
  std::string text;
  std::string fetched_at;
  std::string lang_hint;  // ISO 639-1, empty when unknown

  static std::string IdFor(std::string_view text);
  bool operator==(const Document &) const = default;
};

struct Posting {
  std::string doc;
  size_t tf = 0;
  bool operator==(const Posting &) const = default;
};

// Token -> postings sorted by document id. Tokens are case-folded words.
class InvertedIndex {
 public:
  const std::vector<Posting> &Lookup(std::string_view token) const;
  size_t Tf(std::string_view token, std::string_view doc) const;
  // Sum of tf over all postings of the token.
  size_t CorpusFrequency(std::string_view token) const;

  const std::map<std::string, std::vector<Posting>, std::less<>> &postings() const {
    return postings_;
  }
  void AddPosting(std::string token, Posting posting);

  bool operator==(const InvertedIndex &) const = default;

 private:
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
};

struct Corpus {
  std::string project;
  std::map<std::string, Document> documents;  // by id
  InvertedIndex index;
};

// Throws empty-corpus when there are no documents.
InvertedIndex IndexCorpus(const Corpus &corpus);

// Decodes raw bytes into a Document: UTF-8 or Windows-1251 input, CRLF
// folded, HTML tags stripped. Throws invalid-argument for binary, empty or
// undecodable content.
Document MakeDocument(std::string uri, std::string_view bytes,
                      std::string fetched_at);

struct IngestDiagnostic {
  std::string source;
  std::string message;
};

struct IngestResult {
  std::vector<std::string> added;       // new document ids
  std::vector<std::string> duplicates;  // sources whose content was known
  std::vector<IngestDiagnostic> diagnostics;
};

struct IngestOptions {
  // http(s) sources must start with one of these prefixes.
  std::vector<std::string> url_allowlist;
  // Replaces the network fetch; used by tests.
  std::function<std::string(const std::string &url)> fetch;
};

// Reads each source into the corpus and rebuilds the index. Per-source
// failures become diagnostics; throws ingest-failure (with per-source causes)
// only when every source failed.
IngestResult Ingest(Corpus &corpus, const std::vector<std::string> &sources,
                    const IngestOptions &options = {});

struct ScoredDocument {
  std::string doc;
  double score = 0;
  bool operator==(const ScoredDocument &) const = default;
};

// Seed-term coverage: distinct seeds present / number of seeds. Multiword
// seeds must occur as a contiguous token sequence. Sorted by score
// descending, then document id. Throws invalid-argument for no seeds.
std::vector<ScoredDocument> RelevanceFilter(const Corpus &corpus,
                                            const std::vector<std::string> &seeds,
                                            double min_score);

// Project-local persistence: corpus/<id>.txt, corpus/manifest.xml and
// index.xml under the project directory.
class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path project_dir, std::string project);

  bool Exists() const;
  // Throws io-error when the corpus directory or a document file is missing.
  Corpus Load() const;
  void Save(const Corpus &corpus) const;

  std::filesystem::path corpus_dir() const { return dir_ / "corpus"; }
  std::filesystem::path manifest_path() const { return corpus_dir() / "manifest.xml"; }
  std::filesystem::path index_path() const { return dir_ / "index.xml"; }

 private:
  std::filesystem::path dir_;
  std::string project_;
};

std::string ReadFile(const std::filesystem::path &path);
// Writes through a temporary file and rename.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view bytes);

}  // namespace ontoforge

#endif  // ONTOFORGE_CORPUS_H_
