// Copyright 2026 The cpms Authors
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

#include "cpms/rd/link_format.h"

#include <cctype>

#include "cpms/common/error.h"

namespace cpms::rd {
namespace {

class LinkParser {
 public:
  explicit LinkParser(std::string_view text) : text_(text) {}

  std::vector<LinkEntry> Parse() {
    std::vector<LinkEntry> links;
    SkipSpace();
    if (AtEnd()) return links;
    while (true) {
      links.push_back(Link());
      SkipSpace();
      if (AtEnd()) break;
      Expect(',');
      SkipSpace();
    }
    return links;
  }

 private:
  LinkEntry Link() {
    LinkEntry link;
    Expect('<');
    size_t close = text_.find('>', pos_);
    if (close == std::string_view::npos) Fail("unterminated '<'");
    link.uri_reference = std::string(text_.substr(pos_, close - pos_));
    for (char c : link.uri_reference) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '<') Fail("bad URI reference");
    }
    pos_ = close + 1;
    while (true) {
      SkipSpace();
      if (AtEnd() || Peek() != ';') break;
      ++pos_;
      SkipSpace();
      std::string name = Name();
      SkipSpace();
      std::string value;
      if (!AtEnd() && Peek() == '=') {
        ++pos_;
        SkipSpace();
        value = (!AtEnd() && Peek() == '"') ? Quoted() : Token();
      }
      link.attributes.emplace_back(std::move(name), std::move(value));
    }
    return link;
  }

  std::string Name() {
    size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ||
          c == '!' || c == '#' || c == '$' || c == '&' || c == '+' || c == '^' || c == '`' ||
          c == '|' || c == '~' || c == '*') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) Fail("expected attribute name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string Token() {
    size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      if (c == ';' || c == ',' || c == '"' || c == '<' || c == '>' ||
          std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) Fail("expected attribute value");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string Quoted() {
    ++pos_;
    std::string out;
    while (true) {
      if (AtEnd()) Fail("unterminated quoted string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (AtEnd()) Fail("dangling escape");
        c = text_[pos_++];
      }
      out.push_back(c);
    }
    return out;
  }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(Peek()))) ++pos_;
  }
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }
  void Expect(char c) {
    if (AtEnd() || Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorCode::kBadLinkFormat, message + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

bool BareValue(const std::string& name, const std::string& value) {
  if (name != "ct" && name != "sz") return false;
  if (value.empty()) return false;
  for (char c : value) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> LinkEntry::Attribute(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return value;
  }
  return std::nullopt;
}

void LinkEntry::Set(std::string name, std::string value) {
  for (auto& [key, existing] : attributes) {
    if (key == name) {
      existing = std::move(value);
      return;
    }
  }
  attributes.emplace_back(std::move(name), std::move(value));
}

std::vector<LinkEntry> ParseLinkFormat(std::string_view text) { return LinkParser(text).Parse(); }

std::string SerializeLink(const LinkEntry& link) {
  std::string out = "<" + link.uri_reference + ">";
  for (const auto& [name, value] : link.attributes) {
    out += ";" + name;
    if (value.empty()) continue;
    out += "=";
    if (BareValue(name, value)) {
      out += value;
      continue;
    }
    out += '"';
    for (char c : value) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  return out;
}

std::string SerializeLinkFormat(const std::vector<LinkEntry>& links) {
  std::string out;
  for (const auto& link : links) {
    if (!out.empty()) out += ",";
    out += SerializeLink(link);
  }
  return out;
}

}  // namespace cpms::rd
