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

#ifndef CPMS_RD_LINK_FORMAT_H_
#define CPMS_RD_LINK_FORMAT_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cpms::rd {

// One web link, `</26241/0>;rt="lps.silo";ct=40`. Attribute order is kept
// so serialization is stable.
struct LinkEntry {
  std::string uri_reference;
  std::vector<std::pair<std::string, std::string>> attributes;

  std::optional<std::string> Attribute(std::string_view name) const;
  // Replaces the first attribute with that name or appends a new one.
  void Set(std::string name, std::string value);

  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

// Link-format document (comma separated link-values). Throws BadLinkFormat.
std::vector<LinkEntry> ParseLinkFormat(std::string_view text);

// ct and sz are written as bare tokens, everything else quoted. Attributes
// with an empty value are written as a bare name.
std::string SerializeLinkFormat(const std::vector<LinkEntry>& links);
std::string SerializeLink(const LinkEntry& link);

}  // namespace cpms::rd

#endif  // CPMS_RD_LINK_FORMAT_H_
