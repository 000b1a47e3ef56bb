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

#ifndef CPMS_LWM2M_OBJECT_MODEL_H_
#define CPMS_LWM2M_OBJECT_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpms/coap/message.h"

namespace cpms::lwm2m {

enum class ValueType : uint8_t { kString, kDouble, kInteger, kBoolean, kOpaque };

using Value = std::variant<std::string, double, int64_t, bool, coap::Bytes>;

// Plain-text wire form. Doubles always carry a fraction ("20.0", "22.5").
std::string FormatValue(const Value& value);
std::optional<Value> ParseValue(ValueType type, std::string_view text);
ValueType TypeOf(const Value& value);

struct ResourceDef {
  int id = 0;
  std::string name;
  bool read = false;
  bool write = false;
  bool execute = false;
  ValueType type = ValueType::kString;
};

struct ObjectDef {
  int object_id = 0;
  std::string name;
  std::string resource_type;  // link "rt" attribute, e.g. "lps.silo"
  std::vector<ResourceDef> resources;

  const ResourceDef* Find(int resource_id) const;
  const ResourceDef* Find(std::string_view name) const;
};

// Hosted resources are those with a value plus the executable ids.
struct ObjectInstance {
  int object_id = 0;
  int instance_id = 0;
  std::map<int, Value> values;
  std::set<int> executables;

  bool Hosts(int resource_id) const {
    return values.contains(resource_id) || executables.contains(resource_id);
  }
};

// "/oid/iid[/rid]".
struct ResourcePath {
  int object_id = 0;
  int instance_id = 0;
  std::optional<int> resource_id;

  static std::optional<ResourcePath> Parse(std::string_view path);
  std::string ToString() const;

  friend auto operator<=>(const ResourcePath&, const ResourcePath&) = default;
};

// Throws InvalidConfig when ids repeat or an Execute resource also stores a
// value type other than the default.
void ValidateObjectDef(const ObjectDef& def);

}  // namespace cpms::lwm2m

#endif  // CPMS_LWM2M_OBJECT_MODEL_H_
