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

#include "ontoforge/text.h"

#include <openssl/evp.h>
#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/ucnv.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <memory>
#include <mutex>

#include "ontoforge/error.h"

namespace ontoforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUnknownConcept: return "unknown-concept";
    case ErrorCode::kCycleViolation: return "cycle-violation";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kIngestFailure: return "ingest-failure";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kIntegrityError: return "integrity-error";
    case ErrorCode::kValidationError: return "validation-error";
    case ErrorCode::kPlanError: return "plan-error";
    case ErrorCode::kBusy: return "busy-error";
    case ErrorCode::kStageFailure: return "stage-failure";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

namespace {

icu::UnicodeString ToUnicode(std::string_view text) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string ToUtf8(const icu::UnicodeString &text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

const icu::Normalizer2 &Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kIoError, "ICU NFC data unavailable");
  }
  return *nfc;
}

icu::UnicodeString NfcLower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString s = Nfc().normalize(ToUnicode(text), status);
  s.toLower(icu::Locale::getRoot());
  s = Nfc().normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize text");
  }
  return s;
}

bool IsTerminal(UChar32 c) {
  return c == '.' || c == '!' || c == '?' || c == 0x2026 /* … */ ||
         c == 0x203C || c == 0x2047 || c == 0x2048 || c == 0x2049;
}

// A prototype word iterator; clones are cheap and not shared across threads.
std::unique_ptr<icu::BreakIterator> NewWordIterator() {
  static std::once_flag once;
  static std::unique_ptr<icu::BreakIterator> prototype;
  std::call_once(once, [] {
    UErrorCode status = U_ZERO_ERROR;
    prototype.reset(
        icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status)) prototype.reset();
  });
  if (!prototype) throw Error(ErrorCode::kIoError, "ICU break data unavailable");
  return std::unique_ptr<icu::BreakIterator>(prototype->clone());
}

}  // namespace

std::string Normalize(std::string_view text) {
  icu::UnicodeString s = NfcLower(text);
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) out.append(static_cast<UChar>(' '));
    pending_space = false;
    out.append(c);
  }
  return ToUtf8(out);
}

std::string FoldCase(std::string_view text) { return ToUtf8(NfcLower(text)); }

bool IsValidUtf8(std::string_view bytes) {
  size_t i = 0;
  const auto *b = reinterpret_cast<const unsigned char *>(bytes.data());
  const size_t n = bytes.size();
  while (i < n) {
    unsigned char c = b[i];
    size_t len;
    uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t k = 1; k < len; ++k) {
      if ((b[i + k] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (b[i + k] & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string Cp1251ToUtf8(std::string_view bytes) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString s(bytes.data(), static_cast<int32_t>(bytes.size()),
                       "windows-1251");
  if (s.isBogus() || U_FAILURE(status)) {
    throw Error(ErrorCode::kIoError, "windows-1251 converter unavailable");
  }
  return ToUtf8(s);
}

size_t CodePointCount(std::string_view text) {
  size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<WordSpan> SplitWords(std::string_view text) {
  const icu::UnicodeString s = ToUnicode(text);
  auto it = NewWordIterator();
  it->setText(s);

  std::vector<WordSpan> words;
  bool sentence_break = true;
  int newlines = 0;
  // Running conversion from UTF-16 units to code points.
  int32_t unit_pos = 0;
  size_t cp_pos = 0;
  auto to_cp = [&](int32_t unit) {
    cp_pos += static_cast<size_t>(s.countChar32(unit_pos, unit - unit_pos));
    unit_pos = unit;
    return cp_pos;
  };

  int32_t start = it->first();
  for (int32_t end = it->next(); end != icu::BreakIterator::DONE;
       start = end, end = it->next()) {
    if (it->getRuleStatus() >= UBRK_WORD_NONE_LIMIT) {
      WordSpan w;
      w.begin = to_cp(start);
      w.end = to_cp(end);
      w.text = ToUtf8(s.tempSubStringBetween(start, end));
      w.starts_sentence = sentence_break || newlines >= 2;
      words.push_back(std::move(w));
      sentence_break = false;
      newlines = 0;
      continue;
    }
    for (int32_t i = start; i < end;) {
      UChar32 c = s.char32At(i);
      i += U16_LENGTH(c);
      if (IsTerminal(c)) sentence_break = true;
      if (c == '\n') {
        ++newlines;
      } else if (!u_isUWhiteSpace(c)) {
        newlines = 0;
      }
    }
  }
  return words;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> out;
  for (const WordSpan &w : SplitWords(text)) out.push_back(FoldCase(w.text));
  return out;
}

bool HasCyrillic(std::string_view text) {
  const icu::UnicodeString s = ToUnicode(text);
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    UErrorCode status = U_ZERO_ERROR;
    if (u_isalpha(c) && uscript_getScript(c, &status) == USCRIPT_CYRILLIC) {
      return true;
    }
  }
  return false;
}

ScriptCounts CountLetters(std::string_view text) {
  ScriptCounts counts;
  const icu::UnicodeString s = ToUnicode(text);
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (!u_isalpha(c)) continue;
    UErrorCode status = U_ZERO_ERROR;
    UScriptCode script = uscript_getScript(c, &status);
    if (script == USCRIPT_CYRILLIC) ++counts.cyrillic;
    if (script == USCRIPT_LATIN) ++counts.latin;
  }
  return counts;
}

std::string Slug(std::string_view normalized) {
  const icu::UnicodeString s = ToUnicode(normalized);
  icu::UnicodeString out;
  bool dash = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isalnum(c)) {
      if (dash && !out.isEmpty()) out.append(static_cast<UChar>('-'));
      dash = false;
      out.append(c);
    } else {
      dash = true;
    }
  }
  return ToUtf8(out);
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> SplitOn(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view Trim(std::string_view text) {
  const char *ws = " \t\r\n\f\v";
  size_t b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  size_t e = text.find_last_not_of(ws);
  return text.substr(b, e - b + 1);
}

std::string NowTimestamp() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text) {
  double value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long ParseInt(std::string_view text) {
  long long value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ontoforge
