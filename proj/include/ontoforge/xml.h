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

// Minimal XML tree with a canonical writer and a strict reader.
//
// The reader handles the subset the writer emits plus comments, processing
// instructions, CDATA and character references. It reports 1-based
// line/column for every failure and records the byte range of each element
// so callers can checksum raw payload bytes.

#ifndef ONTOFORGE_XML_H_
#define ONTOFORGE_XML_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontoforge {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::string text;

  // Source position, filled by ParseXml.
  int line = 0;
  int column = 0;
  size_t begin_offset = 0;
  size_t end_offset = 0;

  XmlElement() = default;
  explicit XmlElement(std::string n) : name(std::move(n)) {}

  XmlElement &Set(std::string key, std::string value);
  XmlElement &Add(XmlElement child);

  const std::string *Attr(std::string_view key) const;
  // Throws ParseError at this element's position if missing.
  const std::string &Require(std::string_view key) const;
  std::string Get(std::string_view key, std::string fallback = {}) const;

  // Children with the given name.
  std::vector<const XmlElement *> All(std::string_view child) const;
  // Throws ParseError unless exactly one such child exists.
  const XmlElement &One(std::string_view child) const;
  const XmlElement *Find(std::string_view child) const;
};

// Canonical form: attributes sorted by name, two-space indentation, LF line
// endings, empty elements self-closed. Children keep their given order.
std::string WriteXmlElement(const XmlElement &element, int indent = 0);

// Prepends the XML declaration and appends a trailing LF.
std::string WriteXmlDocument(const XmlElement &root);

// Returns the document element. Throws ParseError.
XmlElement ParseXml(std::string_view bytes);

std::string EscapeXml(std::string_view text, bool attribute);

}  // namespace ontoforge

#endif  // ONTOFORGE_XML_H_
