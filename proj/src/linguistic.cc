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

#include "ontoforge/linguistic.h"

#include <algorithm>
#include <cmath>

#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace fs = std::filesystem;

namespace ontoforge {

LanguageProfile LanguageProfile::Parse(std::string_view text) {
  LanguageProfile p;
  std::string section;
  int line_no = 0;
  for (const std::string &raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      section = std::string(line.substr(1, line.size() - 2));
      if (section != "meta" && section != "stopwords" && section != "suffixes" &&
          section != "process_markers") {
        throw ParseError("unknown section [" + section + "]", line_no, 1);
      }
      continue;
    }
    if (section.empty()) throw ParseError("entry outside a section", line_no, 1);
    if (section == "meta") {
      size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no, 1);
      std::string key(Trim(line.substr(0, eq)));
      std::string value(Trim(line.substr(eq + 1)));
      if (key == "language") {
        p.language_ = value;
      } else if (key == "script") {
        p.script_ = value;
      } else if (key == "min_stem") {
        p.min_stem_ = static_cast<size_t>(ParseInt(value));
      } else {
        throw ParseError("unknown meta key '" + key + "'", line_no, 1);
      }
    } else if (section == "stopwords") {
      std::string w = FoldCase(line);
      p.stopwords_.insert(w);
      p.stopwords_lookup_.insert(w);
    } else if (section == "suffixes") {
      p.suffixes_.push_back(FoldCase(line));
    } else {
      p.process_markers_.push_back(FoldCase(line));
    }
  }
  std::sort(p.suffixes_.begin(), p.suffixes_.end(), [](const auto &a, const auto &b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  p.suffixes_.erase(std::unique(p.suffixes_.begin(), p.suffixes_.end()),
                    p.suffixes_.end());
  return p;
}

LanguageProfile LanguageProfile::Load(const fs::path &path) {
  return Parse(ReadFile(path));
}

bool LanguageProfile::IsStopword(std::string_view word) const {
  return stopwords_lookup_.find(word) != stopwords_lookup_.end();
}

std::string LanguageProfile::Stem(std::string_view word) const {
  const size_t length = CodePointCount(word);
  for (const std::string &suffix : suffixes_) {
    if (suffix.size() >= word.size() ||
        word.substr(word.size() - suffix.size()) != suffix) {
      continue;
    }
    if (length - CodePointCount(suffix) >= min_stem_) {
      return std::string(word.substr(0, word.size() - suffix.size()));
    }
  }
  return std::string(word);
}

bool LanguageProfile::IsProcessWord(std::string_view word) const {
  for (const std::string &m : process_markers_) {
    if (word.size() > m.size() && word.substr(word.size() - m.size()) == m) {
      return true;
    }
  }
  return false;
}

ProfileSet::ProfileSet(std::vector<LanguageProfile> profiles)
    : profiles_(std::move(profiles)) {}

ProfileSet ProfileSet::LoadDirectory(const fs::path &dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".profile") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<LanguageProfile> profiles;
  for (const fs::path &f : files) profiles.push_back(LanguageProfile::Load(f));
  if (profiles.empty()) {
    throw Error(ErrorCode::kNotFound, "no language profiles in " + dir.string());
  }
  return ProfileSet(std::move(profiles));
}

const LanguageProfile *ProfileSet::ForLanguage(std::string_view language) const {
  for (const LanguageProfile &p : profiles_) {
    if (p.language() == language) return &p;
  }
  return nullptr;
}

const LanguageProfile &ProfileSet::ForText(std::string_view text) const {
  if (profiles_.empty()) {
    throw Error(ErrorCode::kNotFound, "no language profiles loaded");
  }
  std::string_view want = HasCyrillic(text) ? "cyrillic" : "latin";
  for (const LanguageProfile &p : profiles_) {
    if (p.script() == want) return p;
  }
  return profiles_.front();
}

std::vector<std::string> ProfileSet::LemmaSequence(std::string_view phrase) const {
  std::vector<std::string> out;
  for (const std::string &word : WordTokens(phrase)) {
    out.push_back(ForText(word).Stem(word));
  }
  return out;
}

TokenizedDoc Analyze(const Document &doc, const LanguageProfile &profile) {
  if (Trim(doc.text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document " + doc.id + " has no text");
  }
  TokenizedDoc out;
  out.doc = doc.id;
  out.language = profile.language();
  for (WordSpan &w : SplitWords(doc.text)) {
    if (w.starts_sentence || out.sentences.empty()) out.sentences.emplace_back();
    Token t;
    std::string folded = FoldCase(w.text);
    t.is_stopword = profile.IsStopword(folded);
    t.norm = profile.Stem(folded);
    t.surface = std::move(w.text);
    t.begin = w.begin;
    t.end = w.end;
    out.sentences.back().push_back(std::move(t));
  }
  return out;
}

std::string LemmaKey(const std::vector<std::string> &lemmas) {
  return Join(lemmas, " ");
}

std::string TermCandidate::key() const { return LemmaKey(lemma_seq); }

std::vector<TermCandidate> ExtractCandidates(const std::vector<TokenizedDoc> &docs,
                                             int max_ngram) {
  if (max_ngram < 1 || max_ngram > 4) {
    throw Error(ErrorCode::kInvalidArgument, "max_ngram must be in [1,4]");
  }
  struct Acc {
    TermCandidate cand;
    std::set<std::string> docs;
    std::map<std::string, size_t> surfaces;
  };
  std::map<std::vector<std::string>, Acc> acc;
  for (const TokenizedDoc &doc : docs) {
    for (const auto &sentence : doc.sentences) {
      for (size_t i = 0; i < sentence.size(); ++i) {
        if (sentence[i].is_stopword) continue;
        for (size_t n = 1; n <= static_cast<size_t>(max_ngram) && i + n <= sentence.size();
             ++n) {
          if (sentence[i + n - 1].is_stopword) continue;
          std::vector<std::string> lemmas;
          std::vector<std::string> surface;
          for (size_t k = i; k < i + n; ++k) {
            lemmas.push_back(sentence[k].norm);
            surface.push_back(FoldCase(sentence[k].surface));
          }
          Acc &a = acc[lemmas];
          a.cand.freq += 1;
          a.docs.insert(doc.doc);
          a.surfaces[Join(surface, " ")] += 1;
          a.cand.occurrences.push_back(
              Span{doc.doc, sentence[i].begin, sentence[i + n - 1].end});
        }
      }
    }
  }

  std::vector<TermCandidate> out;
  out.reserve(acc.size());
  for (auto &[lemmas, a] : acc) {
    TermCandidate c = std::move(a.cand);
    c.lemma_seq = lemmas;
    c.doc_freq = a.docs.size();
    size_t best = 0;
    for (const auto &[surface, count] : a.surfaces) {
      if (count > best) {
        best = count;
        c.surface_example = surface;
      }
    }
    std::sort(c.occurrences.begin(), c.occurrences.end());
    out.push_back(std::move(c));
  }

  // Every contiguous proper sub-sequence of a candidate that is itself a
  // candidate is nested in it.
  std::map<std::vector<std::string>, size_t> position;
  for (size_t i = 0; i < out.size(); ++i) position.emplace(out[i].lemma_seq, i);
  for (const TermCandidate &longer : out) {
    const auto &seq = longer.lemma_seq;
    for (size_t len = 1; len < seq.size(); ++len) {
      for (size_t start = 0; start + len <= seq.size(); ++start) {
        std::vector<std::string> sub(seq.begin() + static_cast<long>(start),
                                     seq.begin() + static_cast<long>(start + len));
        auto it = position.find(sub);
        if (it != position.end()) out[it->second].nested_in.insert(longer.key());
      }
    }
  }
  return out;
}

size_t CandidateTokenCount(const std::vector<TermCandidate> &candidates) {
  size_t total = 0;
  for (const TermCandidate &c : candidates) {
    if (c.lemma_seq.size() == 1) total += c.freq;
  }
  return total;
}

bool RanksBefore(const TermCandidate &a, const TermCandidate &b) {
  CandidateScores sa = a.scores.value_or(CandidateScores{});
  CandidateScores sb = b.scores.value_or(CandidateScores{});
  if (sa.cvalue != sb.cvalue) return sa.cvalue > sb.cvalue;
  if (sa.tfidf != sb.tfidf) return sa.tfidf > sb.tfidf;
  return a.lemma_seq < b.lemma_seq;
}

std::vector<TermCandidate> ScoreCandidates(std::vector<TermCandidate> candidates,
                                           size_t num_docs) {
  const double tokens = static_cast<double>(CandidateTokenCount(candidates));
  std::map<std::string, size_t> freq_by_key;
  for (const TermCandidate &c : candidates) freq_by_key[c.key()] = c.freq;

  for (TermCandidate &c : candidates) {
    CandidateScores s;
    if (tokens > 0 && num_docs > 0 && c.doc_freq > 0) {
      s.tfidf = (static_cast<double>(c.freq) / tokens) *
                std::log(static_cast<double>(num_docs) / static_cast<double>(c.doc_freq));
    }
    double weight = std::log(1.0 + static_cast<double>(c.lemma_seq.size()));
    double freq = static_cast<double>(c.freq);
    if (c.nested_in.empty()) {
      s.cvalue = weight * freq;
    } else {
      double sum = 0;
      for (const std::string &k : c.nested_in) {
        auto it = freq_by_key.find(k);
        if (it != freq_by_key.end()) sum += static_cast<double>(it->second);
      }
      s.cvalue = weight * (freq - sum / static_cast<double>(c.nested_in.size()));
    }
    c.scores = s;
  }
  std::sort(candidates.begin(), candidates.end(), RanksBefore);
  return candidates;
}

size_t TextGraph::Lookup(const std::string &a, const std::string &b) const {
  auto it = edges.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  return it == edges.end() ? 0 : it->second;
}

TextGraph BuildTextGraph(const TokenizedDoc &doc, int window,
                         const TermLexicon &lexicon) {
  if (window < 1) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
  size_t longest = 1;
  for (const auto &term : lexicon) longest = std::max(longest, term.size());

  TextGraph g;
  g.doc = doc.doc;
  for (const auto &sentence : doc.sentences) {
    std::vector<std::string> units;
    for (size_t i = 0; i < sentence.size();) {
      size_t matched = 0;
      for (size_t n = std::min(longest, sentence.size() - i); n >= 2; --n) {
        std::vector<std::string> seq;
        for (size_t k = i; k < i + n; ++k) seq.push_back(sentence[k].norm);
        if (lexicon.count(seq)) {
          units.push_back(LemmaKey(seq));
          matched = n;
          break;
        }
      }
      if (matched) {
        i += matched;
        continue;
      }
      if (!sentence[i].is_stopword) units.push_back(sentence[i].norm);
      ++i;
    }
    for (size_t i = 0; i < units.size(); ++i) {
      g.nodes.insert(units[i]);
      for (size_t j = i + 1; j < units.size() && j - i <= static_cast<size_t>(window);
           ++j) {
        if (units[i] == units[j]) continue;
        auto key = units[i] < units[j] ? std::make_pair(units[i], units[j])
                                       : std::make_pair(units[j], units[i]);
        ++g.edges[key];
      }
    }
  }
  return g;
}

}  // namespace ontoforge
