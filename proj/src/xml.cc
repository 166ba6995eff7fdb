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

#include "ontoforge/xml.h"

#include <algorithm>

#include "ontoforge/error.h"
#include "ontoforge/text.h"

namespace ontoforge {

XmlElement &XmlElement::Set(std::string key, std::string value) {
  for (auto &[k, v] : attributes) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  attributes.emplace_back(std::move(key), std::move(value));
  return *this;
}

XmlElement &XmlElement::Add(XmlElement child) {
  children.push_back(std::move(child));
  return children.back();
}

const std::string *XmlElement::Attr(std::string_view key) const {
  for (const auto &[k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string &XmlElement::Require(std::string_view key) const {
  const std::string *v = Attr(key);
  if (v == nullptr) {
    throw ParseError("<" + name + "> lacks attribute '" + std::string(key) + "'",
                     line, column);
  }
  return *v;
}

std::string XmlElement::Get(std::string_view key, std::string fallback) const {
  const std::string *v = Attr(key);
  return v ? *v : fallback;
}

std::vector<const XmlElement *> XmlElement::All(std::string_view child) const {
  std::vector<const XmlElement *> out;
  for (const XmlElement &c : children) {
    if (c.name == child) out.push_back(&c);
  }
  return out;
}

const XmlElement *XmlElement::Find(std::string_view child) const {
  for (const XmlElement &c : children) {
    if (c.name == child) return &c;
  }
  return nullptr;
}

const XmlElement &XmlElement::One(std::string_view child) const {
  auto all = All(child);
  if (all.size() != 1) {
    throw ParseError("<" + name + "> must contain exactly one <" +
                         std::string(child) + ">",
                     line, column);
  }
  return *all.front();
}

std::string EscapeXml(std::string_view text, bool attribute) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        out += attribute ? "&quot;" : "\"";
        break;
      case '\n':
        out += attribute ? "&#10;" : "\n";
        break;
      case '\r': out += "&#13;"; break;
      case '\t':
        out += attribute ? "&#9;" : "\t";
        break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string WriteXmlElement(const XmlElement &element, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  std::string out = pad + "<" + element.name;
  auto attrs = element.attributes;
  std::sort(attrs.begin(), attrs.end());
  for (const auto &[k, v] : attrs) {
    out += " " + k + "=\"" + EscapeXml(v, true) + "\"";
  }
  if (element.children.empty() && element.text.empty()) return out + "/>\n";
  if (element.children.empty()) {
    return out + ">" + EscapeXml(element.text, false) + "</" + element.name +
           ">\n";
  }
  out += ">\n";
  for (const XmlElement &child : element.children) {
    out += WriteXmlElement(child, indent + 1);
  }
  return out + pad + "</" + element.name + ">\n";
}

std::string WriteXmlDocument(const XmlElement &root) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + WriteXmlElement(root);
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  XmlElement Document() {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") Advance(3);
    SkipMisc();
    if (AtEnd() || Peek() != '<') Fail("expected document element");
    XmlElement root = Element();
    SkipMisc();
    if (!AtEnd()) Fail("content after document element");
    return root;
  }

 private:
  [[noreturn]] void Fail(const std::string &message) const {
    throw ParseError(message, line_, column_);
  }

  bool AtEnd() const { return pos_ >= in_.size(); }
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }
  bool StartsWith(std::string_view s) const {
    return in_.substr(pos_, s.size()) == s;
  }

  void Advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos_ < in_.size(); ++i, ++pos_) {
      unsigned char c = static_cast<unsigned char>(in_[pos_]);
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void Expect(std::string_view s) {
    if (!StartsWith(s)) Fail("expected '" + std::string(s) + "'");
    Advance(s.size());
  }

  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) Advance();
  }

  void SkipUntil(std::string_view end, const char *what) {
    size_t found = in_.find(end, pos_);
    if (found == std::string_view::npos) Fail(std::string("unterminated ") + what);
    Advance(found + end.size() - pos_);
  }

  // Declarations, comments, processing instructions and whitespace outside
  // the document element.
  void SkipMisc() {
    while (true) {
      SkipSpace();
      if (StartsWith("<?")) {
        SkipUntil("?>", "processing instruction");
      } else if (StartsWith("<!--")) {
        SkipUntil("-->", "comment");
      } else if (StartsWith("<!DOCTYPE")) {
        Fail("DOCTYPE is not supported");
      } else {
        return;
      }
    }
  }

  std::string Name() {
    size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
                c == ':' || (static_cast<unsigned char>(c) >= 0x80);
      if (!ok) break;
      Advance();
    }
    if (pos_ == start) Fail("expected a name");
    char first = in_[start];
    if ((first >= '0' && first <= '9') || first == '-' || first == '.') {
      Fail("invalid name start");
    }
    return std::string(in_.substr(start, pos_ - start));
  }

  static void AppendUtf8(std::string &out, unsigned long cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  void Reference(std::string &out) {
    Expect("&");
    size_t semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10) {
      Fail("unterminated entity reference");
    }
    std::string_view ent = in_.substr(pos_, semi - pos_);
    if (ent == "lt") {
      out.push_back('<');
    } else if (ent == "gt") {
      out.push_back('>');
    } else if (ent == "amp") {
      out.push_back('&');
    } else if (ent == "quot") {
      out.push_back('"');
    } else if (ent == "apos") {
      out.push_back('\'');
    } else if (ent.size() > 1 && ent[0] == '#') {
      unsigned long cp = 0;
      bool hex = ent[1] == 'x';
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) Fail("empty character reference");
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') {
          d = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          d = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          d = c - 'A' + 10;
        } else {
          Fail("bad character reference");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(d);
        if (cp > 0x10FFFF) Fail("character reference out of range");
      }
      if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
        Fail("invalid character reference");
      }
      AppendUtf8(out, cp);
    } else {
      Fail("unknown entity '&" + std::string(ent) + ";'");
    }
    Advance(semi + 1 - pos_);
  }

  std::string AttributeValue() {
    char quote = Peek();
    if (quote != '"' && quote != '\'') Fail("expected quoted attribute value");
    Advance();
    std::string out;
    while (true) {
      if (AtEnd()) Fail("unterminated attribute value");
      char c = Peek();
      if (c == quote) break;
      if (c == '<') Fail("'<' in attribute value");
      if (c == '&') {
        Reference(out);
        continue;
      }
      // Literal whitespace in attribute values normalizes to a space.
      out.push_back(c == '\n' || c == '\t' || c == '\r' ? ' ' : c);
      Advance();
    }
    Advance();
    return out;
  }

  XmlElement Element() {
    XmlElement e;
    e.line = line_;
    e.column = column_;
    e.begin_offset = pos_;
    Expect("<");
    e.name = Name();
    while (true) {
      bool had_space = !AtEnd() && IsSpace(Peek());
      SkipSpace();
      if (StartsWith("/>")) {
        Advance(2);
        e.end_offset = pos_;
        return e;
      }
      if (StartsWith(">")) {
        Advance();
        break;
      }
      if (!had_space) Fail("expected whitespace before attribute");
      int attr_line = line_, attr_col = column_;
      std::string key = Name();
      SkipSpace();
      Expect("=");
      SkipSpace();
      std::string value = AttributeValue();
      if (e.Attr(key)) {
        throw ParseError("duplicate attribute '" + key + "'", attr_line, attr_col);
      }
      e.attributes.emplace_back(std::move(key), std::move(value));
    }

    std::string text;
    while (true) {
      if (AtEnd()) Fail("unterminated element <" + e.name + ">");
      if (StartsWith("</")) {
        Advance(2);
        std::string closing = Name();
        if (closing != e.name) {
          Fail("mismatched closing tag </" + closing + "> for <" + e.name + ">");
        }
        SkipSpace();
        Expect(">");
        break;
      }
      if (StartsWith("<!--")) {
        SkipUntil("-->", "comment");
      } else if (StartsWith("<![CDATA[")) {
        Advance(9);
        size_t end = in_.find("]]>", pos_);
        if (end == std::string_view::npos) Fail("unterminated CDATA");
        text.append(in_.substr(pos_, end - pos_));
        Advance(end + 3 - pos_);
      } else if (StartsWith("<?")) {
        SkipUntil("?>", "processing instruction");
      } else if (Peek() == '<') {
        e.children.push_back(Element());
      } else if (Peek() == '&') {
        Reference(text);
      } else {
        text.push_back(Peek() == '\r' ? '\n' : Peek());
        Advance();
      }
    }
    e.end_offset = pos_;
    // Whitespace between child elements is formatting, not content.
    if (!e.children.empty() && Trim(text).empty()) text.clear();
    e.text = std::move(text);
    return e;
  }

  std::string_view in_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

XmlElement ParseXml(std::string_view bytes) {
  if (!IsValidUtf8(bytes)) throw ParseError("input is not valid UTF-8", 1, 1);
  return Reader(bytes).Document();
}

}  // namespace ontoforge
