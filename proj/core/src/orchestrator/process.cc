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

#include "cpms/orchestrator/process.h"

#include <fstream>
#include <sstream>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "json.hpp"

namespace cpms::orchestrator {
namespace {

using json = nlohmann::json;
using semantic::Term;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidProcess, message);
}

std::string ParamText(const json& value, const std::string& where) {
  if (value.is_number()) return FormatNumber(value.get<double>());
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  Invalid(where + ": parameters must be numbers or strings");
}

Term IriParam(const json& qos, const char* key, Term fallback, const std::string& where) {
  if (!qos.contains(key)) return fallback;
  if (!qos[key].is_string()) Invalid(where + ": qos." + key + " must be a string");
  try {
    Term t = semantic::ParseTerm(qos[key].get<std::string>(), semantic::WellKnownPrefixes());
    if (!t.is_iri()) Invalid(where + ": qos." + key + " must be an IRI");
    return t;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidProcess) throw;
    Invalid(where + ": qos." + key + ": " + e.what());
  }
}

}  // namespace

std::optional<double> ServiceRequest::NumericParam(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  return ParseDouble(it->second);
}

Term DefaultMaterial() { return Term::Iri(semantic::vocab::Dbpedia("Liquid")); }
Term DefaultUnit() { return Term::Iri(semantic::vocab::Dbpedia("Celsius")); }

void ValidateProcessSpec(const ProcessSpec& spec) {
  if (spec.name.empty()) Invalid("process without a name");
  if (spec.inputs.empty()) Invalid(spec.name + ": no inputs");
  for (const auto& input : spec.inputs) {
    if (input.ingredient.empty()) Invalid(spec.name + ": input without ingredient");
    if (!(input.volume_pct > 0 && input.volume_pct <= 100)) {
      Invalid(spec.name + ": input volume must be in (0, 100]");
    }
  }
  for (size_t i = 0; i < spec.steps.size(); ++i) {
    const ServiceRequest& step = spec.steps[i];
    std::string where = spec.name + " step " + std::to_string(i + 1);
    if (step.label.empty()) Invalid(where + ": empty label");
    if (step.label == "Fill" || step.label == "Empty" || step.label == "Transfer") {
      Invalid(where + ": " + step.label + " is plant-specific and not allowed in a process");
    }
    if (step.label == "Heat" && !step.NumericParam("setpoint")) {
      Invalid(where + ": Heat needs a numeric setpoint");
    }
    if (step.label == "Mix" && !step.NumericParam("duration")) {
      Invalid(where + ": Mix needs a numeric duration");
    }
  }
}

ProcessSpec ParseProcessSpec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Invalid(std::string("process is not JSON: ") + e.what());
  }
  if (!doc.is_object()) Invalid("process must be an object");
  ProcessSpec spec;
  try {
    spec.name = doc.value("name", "");
    for (const auto& in : doc.value("inputs", json::array())) {
      spec.inputs.push_back({in.at("ingredient").get<std::string>(), in.at("volume").get<double>()});
    }
    int index = 0;
    for (const auto& s : doc.value("steps", json::array())) {
      std::string where = "step " + std::to_string(++index);
      ServiceRequest req;
      req.label = s.at("label").get<std::string>();
      json qos = s.value("qos", json::object());
      req.qos.material = IriParam(qos, "material", DefaultMaterial(), where);
      req.qos.unit = IriParam(qos, "unit", DefaultUnit(), where);
      if (qos.contains("min_capability")) req.qos.min_capability = qos["min_capability"].get<double>();
      json params = s.value("params", json::object());
      for (auto it = params.begin(); it != params.end(); ++it) {
        req.params[it.key()] = ParamText(it.value(), where);
      }
      spec.steps.push_back(std::move(req));
    }
    if (doc.contains("delivery")) {
      const json& d = doc["delivery"];
      if (d.is_string()) {
        spec.delivery.endpoint = d.get<std::string>();
      } else {
        spec.delivery.endpoint = d.value("endpoint", "");
      }
    }
  } catch (const json::exception& e) {
    Invalid(std::string("malformed process: ") + e.what());
  }
  ValidateProcessSpec(spec);
  return spec;
}

ProcessSpec LoadProcessSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) Invalid("cannot read process " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProcessSpec(buffer.str());
}

}  // namespace cpms::orchestrator
