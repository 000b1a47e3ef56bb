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

#include "cpms/lwm2m/object_model.h"

#include <cmath>
#include <set>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"

namespace cpms::lwm2m {

std::string FormatValue(const Value& value) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const {
      std::string text = FormatNumber(d);
      if (std::isfinite(d) && text.find_first_of(".eE") == std::string::npos) text += ".0";
      return text;
    }
    std::string operator()(int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const coap::Bytes& b) const { return std::string(b.begin(), b.end()); }
  };
  return std::visit(Visitor{}, value);
}

std::optional<Value> ParseValue(ValueType type, std::string_view text) {
  switch (type) {
    case ValueType::kString:
      return Value(std::string(text));
    case ValueType::kDouble:
      if (auto d = ParseDouble(Trim(text)); d && std::isfinite(*d)) return Value(*d);
      return std::nullopt;
    case ValueType::kInteger:
      if (auto i = ParseInteger(Trim(text))) return Value(static_cast<int64_t>(*i));
      return std::nullopt;
    case ValueType::kBoolean: {
      auto t = Trim(text);
      if (t == "true" || t == "1") return Value(true);
      if (t == "false" || t == "0") return Value(false);
      return std::nullopt;
    }
    case ValueType::kOpaque:
      return Value(coap::Bytes(text.begin(), text.end()));
  }
  return std::nullopt;
}

ValueType TypeOf(const Value& value) {
  switch (value.index()) {
    case 0: return ValueType::kString;
    case 1: return ValueType::kDouble;
    case 2: return ValueType::kInteger;
    case 3: return ValueType::kBoolean;
    default: return ValueType::kOpaque;
  }
}

const ResourceDef* ObjectDef::Find(int resource_id) const {
  for (const auto& r : resources) {
    if (r.id == resource_id) return &r;
  }
  return nullptr;
}

const ResourceDef* ObjectDef::Find(std::string_view resource_name) const {
  for (const auto& r : resources) {
    if (r.name == resource_name) return &r;
  }
  return nullptr;
}

std::optional<ResourcePath> ResourcePath::Parse(std::string_view path) {
  if (path.empty() || path[0] != '/') return std::nullopt;
  auto parts = Split(path.substr(1), '/');
  if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
  std::vector<int> ids;
  for (const auto& p : parts) {
    auto v = ParseInteger(p);
    if (!v || *v < 0 || *v > 65535 || p[0] == '+') return std::nullopt;
    ids.push_back(static_cast<int>(*v));
  }
  ResourcePath out{ids[0], ids[1], std::nullopt};
  if (ids.size() == 3) out.resource_id = ids[2];
  return out;
}

std::string ResourcePath::ToString() const {
  std::string out = "/" + std::to_string(object_id) + "/" + std::to_string(instance_id);
  if (resource_id) out += "/" + std::to_string(*resource_id);
  return out;
}

void ValidateObjectDef(const ObjectDef& def) {
  std::set<int> ids;
  for (const auto& r : def.resources) {
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kInvalidConfig,
                  def.name + ": duplicate resource id " + std::to_string(r.id));
    }
    if (r.execute && (r.read || r.write)) {
      throw Error(ErrorCode::kInvalidConfig, def.name + "/" + r.name + ": Execute carries no value");
    }
  }
}

}  // namespace cpms::lwm2m
