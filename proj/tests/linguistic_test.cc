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

#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ontoforge/corpus.h"
#include "ontoforge/defaults.h"
#include "ontoforge/error.h"
#include "ontoforge/linguistic.h"

namespace ontoforge {
namespace {

Document Doc(const std::string &text) {
  Document d;
  d.id = Document::IdFor(text);
  d.text = text;
  return d;
}

// No stopwords, no suffixes: norms are plain case folds.
LanguageProfile Bare() { return LanguageProfile::Parse("[meta]\nlanguage = en\n"); }

const LanguageProfile &En() {
  static const ProfileSet set = DefaultProfiles();
  return *set.ForLanguage("en");
}

const TermCandidate *Find(const std::vector<TermCandidate> &cs, const std::string &key) {
  for (const TermCandidate &c : cs) {
    if (c.key() == key) return &c;
  }
  return nullptr;
}

TEST_SUITE("linguistic") {

TEST_CASE("profile parsing") {
  LanguageProfile p = LanguageProfile::Parse(
      "# comment\n[meta]\nlanguage = xx\nscript = cyrillic\nmin_stem = 2\n"
      "[stopwords]\nthe\n[suffixes]\ns\ning\n[process_markers]\ntion\n");
  CHECK(p.language() == "xx");
  CHECK(p.script() == "cyrillic");
  CHECK(p.IsStopword("the"));
  CHECK_FALSE(p.IsStopword("them"));
  CHECK(p.Stem("mining") == "min");
  CHECK(p.Stem("ring") == "ring");  // stem would be shorter than 2 code points
  CHECK(p.Stem("cats") == "cat");
  CHECK(p.IsProcessWord("extraction"));
  CHECK_FALSE(p.IsProcessWord("network"));
  CHECK_THROWS_AS(LanguageProfile::Parse("[bogus]\nx\n"), Error);
}

TEST_CASE("built-in profiles select by script") {
  ProfileSet set = DefaultProfiles();
  CHECK(set.ForText("онтологія").language() == "uk");
  CHECK(set.ForText("ontology").language() == "en");
  CHECK(set.LemmaSequence("Semantic Networks") ==
        std::vector<std::string>{"semant", "network"});
}

TEST_CASE("Ukrainian apostrophe words and sentence split") {
  ProfileSet set = DefaultProfiles();
  TokenizedDoc t = Analyze(Doc("Комп'ютерна онтологія. Друге речення."), set.ForText("онтологія"));
  REQUIRE(t.sentences.size() == 2);
  REQUIRE(t.sentences[0].size() == 2);
  CHECK(t.sentences[0][0].surface == "Комп'ютерна");
  CHECK(t.sentences[0][0].begin == 0);
  CHECK(t.sentences[0][0].end == 11);
}

TEST_CASE("case variants share a norm") {
  TokenizedDoc t = Analyze(Doc("A a A."), Bare());
  REQUIRE(t.sentences.size() == 1);
  REQUIRE(t.sentences[0].size() == 3);
  for (const Token &tok : t.sentences[0]) CHECK(tok.norm == "a");
}

TEST_CASE("tokenizer agrees with a reference splitter on ASCII text") {
  std::mt19937 rng(3);
  const char *words[] = {"Graph", "node", "edge", "Term", "x2", "ab"};
  const char *seps[] = {" ", "  ", ", ", ". ", "! ", "? ", "\n\n"};
  for (int round = 0; round < 50; ++round) {
    std::string text;
    int n = 1 + static_cast<int>(rng() % 25);
    for (int i = 0; i < n; ++i) {
      text += words[rng() % 6];
      text += seps[rng() % 7];
    }
    // Reference: alnum runs; . ! ? or a blank line end the sentence.
    std::vector<std::vector<std::string>> expected(1);
    std::string cur;
    for (size_t i = 0; i <= text.size(); ++i) {
      char ch = i < text.size() ? text[i] : ' ';
      if (std::isalnum(static_cast<unsigned char>(ch))) {
        cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        continue;
      }
      if (!cur.empty()) expected.back().push_back(cur);
      cur.clear();
      bool breaks = ch == '.' || ch == '!' || ch == '?' ||
                    (ch == '\n' && i + 1 < text.size() && text[i + 1] == '\n');
      if (breaks && !expected.back().empty()) expected.emplace_back();
    }
    if (expected.back().empty()) expected.pop_back();

    TokenizedDoc t = Analyze(Doc(text), Bare());
    std::vector<std::vector<std::string>> got;
    for (const auto &s : t.sentences) {
      got.emplace_back();
      for (const Token &tok : s) got.back().push_back(tok.norm);
    }
    CAPTURE(text);
    CHECK(got == expected);
  }
}

TEST_CASE("repeated bigram across sentences") {
  TokenizedDoc t = Analyze(Doc("semantic network . semantic network"), En());
  std::vector<TermCandidate> cs = ExtractCandidates({t}, 3);
  const TermCandidate *c = Find(cs, "semant network");
  REQUIRE(c != nullptr);
  CHECK(c->freq == 2);
  CHECK(c->surface_example == "semantic network");
  CHECK(c->occurrences.size() == 2);
  // No n-gram crosses the sentence boundary.
  CHECK(Find(cs, "network semant") == nullptr);
}

TEST_CASE("stopwords cannot open or close a candidate") {
  TokenizedDoc t = Analyze(Doc("the network"), En());
  std::vector<TermCandidate> cs = ExtractCandidates({t}, 3);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].key() == "network");
  CHECK_THROWS_AS(ExtractCandidates({t}, 0), Error);
  CHECK_THROWS_AS(ExtractCandidates({t}, 5), Error);
}

TEST_CASE("n-gram extraction agrees with a brute-force enumerator") {
  std::mt19937 rng(5);
  std::string vocab[] = {"a", "b", "c", "the", "of", "d"};
  LanguageProfile p = LanguageProfile::Parse("[meta]\nlanguage = en\n[stopwords]\nthe\nof\n");
  for (int round = 0; round < 20; ++round) {
    std::vector<TokenizedDoc> docs;
    for (int d = 0; d < 3; ++d) {
      std::string text;
      int n = 3 + static_cast<int>(rng() % 15);
      for (int i = 0; i < n; ++i) text += vocab[rng() % 6] + (rng() % 6 == 0 ? ". " : " ");
      text += "d" + std::to_string(d) + ".";  // distinct texts, distinct ids
      docs.push_back(Analyze(Doc(text), p));
    }
    for (int max_n = 1; max_n <= 4; ++max_n) {
      std::map<std::vector<std::string>, std::pair<size_t, std::set<std::string>>> oracle;
      for (const TokenizedDoc &doc : docs) {
        for (const auto &s : doc.sentences) {
          for (size_t i = 0; i < s.size(); ++i) {
            for (size_t n = 1; n <= static_cast<size_t>(max_n) && i + n <= s.size(); ++n) {
              if (s[i].is_stopword || s[i + n - 1].is_stopword) continue;
              std::vector<std::string> seq;
              for (size_t k = i; k < i + n; ++k) seq.push_back(s[k].norm);
              oracle[seq].first++;
              oracle[seq].second.insert(doc.doc);
            }
          }
        }
      }
      std::vector<TermCandidate> cs = ExtractCandidates(docs, max_n);
      REQUIRE(cs.size() == oracle.size());
      for (const TermCandidate &c : cs) {
        auto it = oracle.find(c.lemma_seq);
        REQUIRE(it != oracle.end());
        CHECK(c.freq == it->second.first);
        CHECK(c.doc_freq == it->second.second.size());
        // Nesting: every longer candidate containing this one contiguously.
        std::set<std::string> nested;
        for (const auto &[other, info] : oracle) {
          if (other.size() <= c.lemma_seq.size()) continue;
          for (size_t s = 0; s + c.lemma_seq.size() <= other.size(); ++s) {
            if (std::equal(c.lemma_seq.begin(), c.lemma_seq.end(), other.begin() + s)) {
              nested.insert(LemmaKey(other));
              break;
            }
          }
        }
        CHECK(c.nested_in == nested);
      }
    }
  }
}

TEST_CASE("tf-idf and C-value") {
  // 10 unigram tokens over 3 documents; "x" occurs 3 times in one.
  std::vector<TokenizedDoc> docs{Analyze(Doc("x x x y"), Bare()), Analyze(Doc("y z"), Bare()),
                                 Analyze(Doc("z w w w"), Bare())};
  std::vector<TermCandidate> cs = ScoreCandidates(ExtractCandidates(docs, 1), 3);
  CHECK(CandidateTokenCount(cs) == 10);
  const TermCandidate *x = Find(cs, "x");
  REQUIRE(x != nullptr);
  // Frozen from 0.3 * ln(3).
  CHECK(x->scores->tfidf == doctest::Approx(0.3295836866004329).epsilon(1e-12));
  // ln(2) * 3, not nested.
  CHECK(x->scores->cvalue == doctest::Approx(3 * 0.6931471805599453).epsilon(1e-12));
  CHECK(Find(cs, "y")->scores->tfidf == doctest::Approx(0.2 * std::log(1.5)).epsilon(1e-12));

  // Unigram with freq 4 nested in a bigram with freq 2.
  std::vector<TermCandidate> nested = ScoreCandidates(
      ExtractCandidates({Analyze(Doc("p q. p q. p. p."), Bare())}, 2), 1);
  const TermCandidate *pq = Find(nested, "p q");
  const TermCandidate *pp = Find(nested, "p");
  REQUIRE(pq);
  REQUIRE(pp);
  CHECK(pq->scores->cvalue == doctest::Approx(std::log(3.0) * 2).epsilon(1e-12));
  CHECK(pp->scores->cvalue == doctest::Approx(0.6931471805599453 * 2).epsilon(1e-12));
  CHECK(pp->scores->tfidf == 0.0);  // one document

  // A lone unigram with freq 4: ln(2) * 4.
  std::vector<TermCandidate> four =
      ScoreCandidates(ExtractCandidates({Analyze(Doc("k k k k"), Bare())}, 1), 1);
  CHECK(four[0].scores->cvalue == doctest::Approx(2.772588722239781).epsilon(1e-12));
}

TEST_CASE("ranking is a strict total order") {
  std::vector<TermCandidate> cs = ScoreCandidates(
      ExtractCandidates({Analyze(Doc("b a c a b d e f e"), Bare())}, 2), 1);
  for (size_t i = 0; i + 1 < cs.size(); ++i) {
    CHECK(RanksBefore(cs[i], cs[i + 1]));
    CHECK_FALSE(RanksBefore(cs[i + 1], cs[i]));
  }
}

TEST_CASE("co-occurrence window") {
  TextGraph g = BuildTextGraph(Analyze(Doc("a b a"), Bare()), 2);
  CHECK(g.Lookup("a", "b") == 2);
  CHECK(g.Lookup("b", "a") == 2);
  CHECK(g.edges.size() == 1);
  CHECK(g.nodes == std::set<std::string>{"a", "b"});
  TextGraph w1 = BuildTextGraph(Analyze(Doc("a b c"), Bare()), 1);
  CHECK(w1.Lookup("a", "c") == 0);
  CHECK(w1.Lookup("a", "b") == 1);
  CHECK_THROWS_AS(BuildTextGraph(Analyze(Doc("a"), Bare()), 0), Error);
}

TEST_CASE("lexicon terms become single graph units") {
  TokenizedDoc t = Analyze(Doc("the semantic network links the concept"), En());
  TermLexicon lex{{"semant", "network"}};
  TextGraph g = BuildTextGraph(t, 2, lex);
  CHECK(g.nodes.count("semant network"));
  CHECK_FALSE(g.nodes.count("semant"));
  CHECK(g.Lookup("semant network", "link") == 1);
  CHECK(g.Lookup("semant network", "concept") == 1);
  CHECK_FALSE(g.nodes.count("the"));
}

}  // TEST_SUITE
}  // namespace
}  // namespace ontoforge
