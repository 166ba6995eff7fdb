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

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ontoforge/corpus.h"
#include "ontoforge/error.h"
#include "test_util.h"

namespace ontoforge {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

Corpus MakeCorpus(const std::vector<std::string> &texts) {
  Corpus c;
  c.project = "p";
  for (size_t i = 0; i < texts.size(); ++i) {
    Document d = MakeDocument("mem:" + std::to_string(i), texts[i], "2026-01-01T00:00:00Z");
    c.documents.emplace(d.id, d);
  }
  c.index = IndexCorpus(c);
  return c;
}

// ASCII-only reference tokenizer.
std::map<std::string, size_t> CountAscii(const std::string &text) {
  std::map<std::string, size_t> out;
  std::string cur;
  for (char ch : text + " ") {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!cur.empty()) {
      ++out[cur];
      cur.clear();
    }
  }
  return out;
}

TEST_SUITE("corpus") {

TEST_CASE("document id is a 16-hex SHA-256 prefix") {
  CHECK(Document::IdFor("") == "e3b0c44298fc1c14");
  CHECK(Document::IdFor("abc") == "ba7816bf8f01cfea");
}

TEST_CASE("decoding strips BOM and CR, and detects language") {
  Document d = MakeDocument("a.txt", "\xEF\xBB\xBFHello world.\r\nSecond line.", "t");
  CHECK(d.text == "Hello world.\nSecond line.");
  CHECK(d.title == "Hello world.");
  CHECK(d.lang_hint == "en");
  // "Мова" in Windows-1251.
  Document u = MakeDocument("b.txt", "\xCC\xEE\xE2\xE0 \xF2\xE5\xEA\xF1\xF2\xF3", "t");
  CHECK(u.text == "Мова тексту");
  CHECK(u.lang_hint == "uk");
}

TEST_CASE("HTML is reduced to text") {
  Document d = MakeDocument(
      "page.html",
      "<html><head><title>T &amp; U</title><style>p{}</style></head>"
      "<body><p>First para.</p><script>var x;</script><p>Second &lt;b&gt;.</p></body></html>",
      "t");
  CHECK(d.title == "T & U");
  CHECK(d.text.find("var x") == std::string::npos);
  CHECK(d.text.find("p{}") == std::string::npos);
  CHECK(d.text.find("First para.") != std::string::npos);
  CHECK(d.text.find("Second <b>.") != std::string::npos);
}

TEST_CASE("unusable content is rejected") {
  CHECK_THROWS_AS(MakeDocument("x", std::string("ab\0cd", 5), "t"), Error);
  CHECK_THROWS_AS(MakeDocument("x", "   \n ", "t"), Error);
  CHECK_THROWS_AS(MakeDocument("x", "\x80\x81\x82\x83 abc", "t"), Error);
}

TEST_CASE("index agrees with a brute-force counter") {
  std::mt19937 rng(11);
  const char *words[] = {"alpha", "Beta", "gamma", "delta", "ALPHA", "x1", "y"};
  std::vector<std::string> texts;
  for (int d = 0; d < 8; ++d) {
    std::string t;
    int n = 5 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      t += words[rng() % 7];
      t += (rng() % 5 == 0) ? ". " : " ";
    }
    texts.push_back(t);
  }
  Corpus c = MakeCorpus(texts);
  std::map<std::string, std::map<std::string, size_t>> expected;
  for (const auto &[id, doc] : c.documents) {
    for (const auto &[tok, n] : CountAscii(doc.text)) expected[tok][id] = n;
  }
  REQUIRE(c.index.postings().size() == expected.size());
  for (const auto &[tok, per_doc] : expected) {
    const auto &postings = c.index.Lookup(tok);
    REQUIRE(postings.size() == per_doc.size());
    size_t total = 0;
    for (const Posting &p : postings) {
      CHECK(p.tf == per_doc.at(p.doc));
      CHECK(c.index.Tf(tok, p.doc) == p.tf);
      total += p.tf;
    }
    CHECK(std::is_sorted(postings.begin(), postings.end(),
                         [](auto &a, auto &b) { return a.doc < b.doc; }));
    CHECK(c.index.CorpusFrequency(tok) == total);
  }
  CHECK(c.index.Lookup("missing").empty());
}

TEST_CASE("an empty corpus cannot be indexed") {
  Corpus c;
  try {
    IndexCorpus(c);
    FAIL("expected empty-corpus");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kEmptyCorpus);
  }
}

TEST_CASE("ingest reports per-source failures and dedupes content") {
  TempDir tmp;
  fs::path a = tmp.path() / "a.txt", b = tmp.path() / "b.txt", bin = tmp.path() / "c.bin";
  WriteFileAtomic(a, "Ontology learning from text.");
  WriteFileAtomic(b, "Ontology learning from text.");
  WriteFileAtomic(bin, std::string("\0\1\2", 3));
  Corpus c;
  IngestResult r = Ingest(c, {a.string(), b.string(), bin.string(),
                              (tmp.path() / "none.txt").string()});
  CHECK(r.added.size() == 1);
  CHECK(r.duplicates == std::vector<std::string>{b.string()});
  CHECK(r.diagnostics.size() == 2);
  CHECK(c.documents.size() == 1);

  Corpus empty;
  try {
    Ingest(empty, {bin.string()});
    FAIL("expected ingest-failure");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIngestFailure);
    CHECK(e.details().size() == 1);
  }
}

TEST_CASE("URLs must be allowlisted") {
  Corpus c;
  IngestOptions opts;
  opts.url_allowlist = {"https://ok.example/"};
  opts.fetch = [](const std::string &) { return std::string("Fetched text here."); };
  IngestResult r = Ingest(c, {"https://ok.example/doc", "https://bad.example/doc"}, opts);
  CHECK(r.added.size() == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].source == "https://bad.example/doc");
}

TEST_CASE("relevance filter boundary") {
  Corpus c = MakeCorpus({"only s1 here", "s1 and s2 both", "neither"});
  std::vector<ScoredDocument> r = RelevanceFilter(c, {"s1", "s2"}, 0.5);
  REQUIRE(r.size() == 2);
  CHECK(r[0].score == 1.0);
  CHECK(r[1].score == 0.5);
  CHECK(r[1].doc == Document::IdFor("only s1 here"));
  CHECK(RelevanceFilter(c, {"s1", "s2"}, 0.51).size() == 1);
  // Multiword seeds need contiguous tokens.
  CHECK(RelevanceFilter(c, {"s1 and"}, 1.0).size() == 1);
  CHECK(RelevanceFilter(c, {"s1 s2"}, 1.0).empty());
  CHECK_THROWS_AS(RelevanceFilter(c, {}, 0.5), Error);
}

TEST_CASE("store round-trip and integrity") {
  TempDir tmp;
  Corpus c = MakeCorpus({"First document text.", "Другий документ."});
  c.project = "p";
  CorpusStore store(tmp.path(), "p");
  CHECK_FALSE(store.Exists());
  store.Save(c);
  CHECK(store.Exists());
  Corpus back = store.Load();
  CHECK(back.documents == c.documents);
  CHECK(back.index == c.index);

  std::string id = c.documents.begin()->first;
  WriteFileAtomic(store.corpus_dir() / (id + ".txt"), "tampered");
  try {
    store.Load();
    FAIL("expected integrity-error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIntegrityError);
  }
  fs::remove_all(store.corpus_dir());
  try {
    store.Load();
    FAIL("expected io-error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}

}  // TEST_SUITE
}  // namespace
}  // namespace ontoforge
