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

#include "ontoforge/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ontoforge/error.h"
#include "ontoforge/interchange.h"
#include "ontoforge/text.h"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

namespace fs = std::filesystem;

namespace ontoforge {

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const fs::path &path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string Document::IdFor(std::string_view text) {
  return Sha256Hex(text).substr(0, 16);
}

namespace {

const std::vector<Posting> kNoPostings;

bool LooksBinary(std::string_view bytes) {
  size_t control = 0;
  size_t n = std::min<size_t>(bytes.size(), 8192);
  for (size_t i = 0; i < n; ++i) {
    unsigned char c = static_cast<unsigned char>(bytes[i]);
    if (c == 0) return true;
    if (c < 0x20 && c != '\n' && c != '\r' && c != '\t' && c != '\f') ++control;
  }
  return n > 0 && control * 10 > n;
}

// Windows-1251 puts the Cyrillic alphabet in 0xC0-0xFF; text in it is
// dominated by those bytes among the high ones.
bool LooksCp1251(std::string_view bytes) {
  size_t high = 0, letters = 0;
  for (char ch : bytes) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (c >= 0x80) {
      ++high;
      if (c >= 0xC0 || c == 0xA8 || c == 0xB8 || c == 0xAA || c == 0xBA ||
          c == 0xAF || c == 0xBF || c == 0xB2 || c == 0xB3 || c == 0xA5 ||
          c == 0xB4) {
        ++letters;
      }
    }
  }
  return high > 0 && letters * 10 >= high * 6;
}

bool LooksHtml(std::string_view uri, std::string_view text) {
  auto ends_with = [&](std::string_view s) {
    return uri.size() >= s.size() && uri.substr(uri.size() - s.size()) == s;
  };
  if (ends_with(".html") || ends_with(".htm")) return true;
  std::string head = FoldCase(Trim(text).substr(0, 64));
  return head.rfind("<!doctype html", 0) == 0 || head.rfind("<html", 0) == 0;
}

std::string DecodeEntities(std::string_view s) {
  static const std::pair<std::string_view, std::string_view> kEntities[] = {
      {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""},
      {"&#39;", "'"}, {"&apos;", "'"}, {"&nbsp;", " "}};
  std::string out;
  for (size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto &[ent, rep] : kEntities) {
        if (s.substr(i, ent.size()) == ent) {
          out.append(rep);
          i += ent.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(s[i++]);
  }
  return out;
}

// Drops script/style blocks and tags; block-level tags become blank lines so
// that sentence splitting still sees paragraph breaks.
std::string StripHtml(std::string_view html, std::string *title) {
  std::string lower = FoldCase(html);
  bool same_length = lower.size() == html.size();
  auto find_ci = [&](std::string_view needle, size_t from) {
    return same_length ? lower.find(needle, from) : html.find(needle, from);
  };
  size_t t0 = find_ci("<title>", 0);
  if (t0 != std::string::npos) {
    size_t t1 = find_ci("</title>", t0);
    if (t1 != std::string::npos) {
      *title = DecodeEntities(Trim(html.substr(t0 + 7, t1 - t0 - 7)));
    }
  }
  std::string out;
  for (size_t i = 0; i < html.size();) {
    if (html[i] != '<') {
      out.push_back(html[i++]);
      continue;
    }
    for (std::string_view block : {"script", "style", "head"}) {
      std::string open = "<" + std::string(block);
      if (find_ci(open, i) == i) {
        size_t close = find_ci("</" + std::string(block), i);
        if (close == std::string::npos) return DecodeEntities(out);
        i = close;
        break;
      }
    }
    size_t end = html.find('>', i);
    if (end == std::string_view::npos) break;
    std::string tag = FoldCase(html.substr(i, std::min<size_t>(end - i, 8)));
    bool block = tag.rfind("<p", 0) == 0 || tag.rfind("</p", 0) == 0 ||
                 tag.rfind("<br", 0) == 0 || tag.rfind("<div", 0) == 0 ||
                 tag.rfind("</div", 0) == 0 || tag.rfind("<h", 0) == 0 ||
                 tag.rfind("</h", 0) == 0 || tag.rfind("<li", 0) == 0;
    out.append(block ? "\n\n" : " ");
    i = end + 1;
  }
  return DecodeEntities(out);
}

std::string FirstLine(std::string_view text) {
  for (std::string_view rest = text; !rest.empty();) {
    size_t nl = rest.find('\n');
    std::string_view line = Trim(rest.substr(0, nl));
    if (!line.empty()) {
      if (line.size() <= 120) return std::string(line);
      size_t cut = 120;
      while (cut > 0 && (static_cast<unsigned char>(line[cut]) & 0xC0) == 0x80) --cut;
      return std::string(line.substr(0, cut));
    }
    if (nl == std::string_view::npos) break;
    rest = rest.substr(nl + 1);
  }
  return {};
}

bool IsUrl(std::string_view source) {
  return source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0;
}

std::string FetchUrl(const std::string &url) {
  size_t scheme_end = url.find("://");
  size_t path_start = url.find('/', scheme_end + 3);
  std::string host = url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
  httplib::Client client(host);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res) {
    throw Error(ErrorCode::kIoError,
                "fetch failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kIoError, "HTTP status " + std::to_string(res->status));
  }
  return res->body;
}

}  // namespace

const std::vector<Posting> &InvertedIndex::Lookup(std::string_view token) const {
  auto it = postings_.find(token);
  return it == postings_.end() ? kNoPostings : it->second;
}

size_t InvertedIndex::Tf(std::string_view token, std::string_view doc) const {
  for (const Posting &p : Lookup(token)) {
    if (p.doc == doc) return p.tf;
  }
  return 0;
}

size_t InvertedIndex::CorpusFrequency(std::string_view token) const {
  size_t total = 0;
  for (const Posting &p : Lookup(token)) total += p.tf;
  return total;
}

void InvertedIndex::AddPosting(std::string token, Posting posting) {
  auto &list = postings_[std::move(token)];
  auto pos = std::lower_bound(
      list.begin(), list.end(), posting.doc,
      [](const Posting &p, const std::string &doc) { return p.doc < doc; });
  if (pos != list.end() && pos->doc == posting.doc) {
    pos->tf += posting.tf;
  } else {
    list.insert(pos, std::move(posting));
  }
}

InvertedIndex IndexCorpus(const Corpus &corpus) {
  if (corpus.documents.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no documents");
  }
  InvertedIndex index;
  // Documents iterate in id order, so postings append already sorted.
  for (const auto &[id, doc] : corpus.documents) {
    std::map<std::string, size_t> counts;
    for (std::string &token : WordTokens(doc.text)) ++counts[std::move(token)];
    for (auto &[token, tf] : counts) index.AddPosting(token, Posting{id, tf});
  }
  return index;
}

Document MakeDocument(std::string uri, std::string_view bytes,
                      std::string fetched_at) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  if (LooksBinary(bytes)) {
    throw Error(ErrorCode::kInvalidArgument, "binary content skipped");
  }
  std::string text;
  if (IsValidUtf8(bytes)) {
    text.assign(bytes);
  } else if (LooksCp1251(bytes)) {
    text = Cp1251ToUtf8(bytes);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unsupported encoding (neither UTF-8 nor Windows-1251)");
  }
  text.erase(std::remove(text.begin(), text.end(), '\r'), text.end());

  std::string title;
  if (LooksHtml(uri, text)) text = StripHtml(text, &title);
  if (Trim(text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document has no text");
  }
  if (title.empty()) title = FirstLine(text);

  Document doc;
  doc.id = Document::IdFor(text);
  doc.uri = std::move(uri);
  doc.title = std::move(title);
  ScriptCounts letters = CountLetters(text);
  if (letters.cyrillic > letters.latin) {
    doc.lang_hint = "uk";
  } else if (letters.latin > 0) {
    doc.lang_hint = "en";
  }
  doc.text = std::move(text);
  doc.fetched_at = std::move(fetched_at);
  return doc;
}

IngestResult Ingest(Corpus &corpus, const std::vector<std::string> &sources,
                    const IngestOptions &options) {
  if (sources.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no sources to ingest");
  }
  IngestResult result;
  size_t succeeded = 0;
  for (const std::string &source : sources) {
    try {
      std::string bytes;
      if (IsUrl(source)) {
        bool allowed = std::any_of(
            options.url_allowlist.begin(), options.url_allowlist.end(),
            [&](const std::string &prefix) { return source.rfind(prefix, 0) == 0; });
        if (!allowed) {
          throw Error(ErrorCode::kInvalidArgument, "URL not in allowlist");
        }
        bytes = options.fetch ? options.fetch(source) : FetchUrl(source);
      } else {
        if (!fs::is_regular_file(source)) {
          throw Error(ErrorCode::kIoError, "no such file");
        }
        bytes = ReadFile(source);
      }
      Document doc = MakeDocument(source, bytes, NowTimestamp());
      ++succeeded;
      if (corpus.documents.count(doc.id)) {
        result.duplicates.push_back(source);
        continue;
      }
      result.added.push_back(doc.id);
      corpus.documents.emplace(doc.id, std::move(doc));
    } catch (const Error &e) {
      result.diagnostics.push_back({source, e.what()});
    } catch (const std::exception &e) {
      result.diagnostics.push_back({source, e.what()});
    }
  }
  if (succeeded == 0) {
    std::vector<std::string> causes;
    for (const auto &d : result.diagnostics) causes.push_back(d.source + ": " + d.message);
    throw Error(ErrorCode::kIngestFailure, "every source failed to ingest", causes);
  }
  corpus.index = IndexCorpus(corpus);
  return result;
}

std::vector<ScoredDocument> RelevanceFilter(const Corpus &corpus,
                                            const std::vector<std::string> &seeds,
                                            double min_score) {
  if (seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "relevance filter needs seed terms");
  }
  std::set<std::vector<std::string>> seed_tokens;
  for (const std::string &seed : seeds) seed_tokens.insert(WordTokens(seed));

  std::vector<ScoredDocument> out;
  for (const auto &[id, doc] : corpus.documents) {
    std::vector<std::string> tokens = WordTokens(doc.text);
    size_t hits = 0;
    for (const auto &seed : seed_tokens) {
      if (seed.empty()) continue;
      if (std::search(tokens.begin(), tokens.end(), seed.begin(), seed.end()) !=
          tokens.end()) {
        ++hits;
      }
    }
    double score = static_cast<double>(hits) / static_cast<double>(seeds.size());
    if (score >= min_score) out.push_back({id, score});
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  });
  return out;
}

CorpusStore::CorpusStore(fs::path project_dir, std::string project)
    : dir_(std::move(project_dir)), project_(std::move(project)) {}

bool CorpusStore::Exists() const { return fs::is_regular_file(manifest_path()); }

Corpus CorpusStore::Load() const {
  if (!fs::is_directory(corpus_dir())) {
    throw Error(ErrorCode::kIoError,
                "corpus directory missing: " + corpus_dir().string());
  }
  Corpus corpus;
  corpus.project = project_;
  if (!fs::exists(manifest_path())) return corpus;
  CorpusManifest manifest = ParseManifest(ReadFile(manifest_path()));
  for (const ManifestEntry &e : manifest.documents) {
    Document doc;
    doc.id = e.id;
    doc.uri = e.uri;
    doc.title = e.title;
    doc.fetched_at = e.fetched_at;
    doc.lang_hint = e.lang;
    doc.text = ReadFile(corpus_dir() / (e.id + ".txt"));
    if (Sha256Hex(doc.text) != e.hash) {
      throw Error(ErrorCode::kIntegrityError,
                  "document " + e.id + " does not match its manifest hash");
    }
    corpus.documents.emplace(doc.id, std::move(doc));
  }
  if (!corpus.documents.empty()) {
    if (fs::exists(index_path())) {
      corpus.index = ParseIndex(ReadFile(index_path()));
    } else {
      corpus.index = IndexCorpus(corpus);
    }
  }
  return corpus;
}

void CorpusStore::Save(const Corpus &corpus) const {
  fs::create_directories(corpus_dir());
  for (const auto &[id, doc] : corpus.documents) {
    fs::path path = corpus_dir() / (id + ".txt");
    if (!fs::exists(path)) WriteFileAtomic(path, doc.text);
  }
  WriteFileAtomic(manifest_path(), Serialize(CorpusManifest::FromCorpus(corpus)));
  WriteFileAtomic(index_path(), SerializeIndex(corpus.index));
}

}  // namespace ontoforge
