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

#include "cpms/plant/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "cpms/common/error.h"
#include "json.hpp"

namespace cpms::plant {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

template <typename T>
T Get(const json& object, const char* key, T fallback, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    Invalid(where + "." + key + ": wrong type");
  }
}

std::string Require(const json& object, const char* key, const std::string& where) {
  auto value = Get<std::string>(object, key, "", where);
  if (value.empty()) Invalid(where + "." + key + " is required");
  return value;
}

std::optional<uint16_t> Port(const json& object, const std::string& where) {
  auto port = Get<int>(object, "port", -1, where);
  if (port < 0) return std::nullopt;
  if (port > 65535) Invalid(where + ".port out of range");
  return static_cast<uint16_t>(port);
}

}  // namespace

std::string_view ServiceName(Service service) {
  switch (service) {
    case Service::kFill: return "Fill";
    case Service::kEmpty: return "Empty";
    case Service::kHeat: return "Heat";
    case Service::kMix: return "Mix";
  }
  return "?";
}

std::optional<Service> ParseService(std::string_view name) {
  for (Service s : {Service::kFill, Service::kEmpty, Service::kHeat, Service::kMix}) {
    if (ServiceName(s) == name) return s;
  }
  return std::nullopt;
}

const SiloSpec* PlantConfig::FindSilo(std::string_view id) const {
  for (const auto& s : silos) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const PipeSpec* PlantConfig::FindPipe(std::string_view id) const {
  for (const auto& p : pipes) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

PlantConfig ParsePlantConfig(std::string_view text, std::string_view base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Invalid(std::string("plant config is not JSON: ") + e.what());
  }
  if (!doc.is_object()) Invalid("plant config must be an object");
  PlantConfig config;
  config.name = Get<std::string>(doc, "name", "plant", "plant");
  for (const auto& s : Get<json>(doc, "silos", json::array(), "plant")) {
    SiloSpec silo;
    silo.id = Require(s, "id", "silo");
    std::string where = "silo " + silo.id;
    silo.capacity_liters = Get<double>(s, "capacity_liters", silo.capacity_liters, where);
    silo.initial_temp_c = Get<double>(s, "initial_temp_C", silo.initial_temp_c, where);
    silo.heat_max_c = Get<double>(s, "heat_max_C", silo.heat_max_c, where);
    silo.heat_rate_c_per_s = Get<double>(s, "heat_rate_C_per_s", silo.heat_rate_c_per_s, where);
    silo.fill_rate_pct_per_s = Get<double>(s, "fill_rate_pct_per_s", silo.fill_rate_pct_per_s, where);
    silo.empty_rate_pct_per_s =
        Get<double>(s, "empty_rate_pct_per_s", silo.empty_rate_pct_per_s, where);
    silo.mix_min_s = Get<double>(s, "mix_min_s", silo.mix_min_s, where);
    for (const auto& name : Get<std::vector<std::string>>(s, "services", {}, where)) {
      auto service = ParseService(name);
      if (!service) Invalid(where + ": unknown service '" + name + "'");
      silo.services.insert(*service);
    }
    silo.description_file = Get<std::string>(s, "description_file", "", where);
    if (!silo.description_file.empty() && silo.description_file[0] != '/' && !base_dir.empty()) {
      silo.description_file = std::string(base_dir) + "/" + silo.description_file;
    }
    silo.port = Port(s, where);
    config.silos.push_back(std::move(silo));
  }
  for (const auto& p : Get<json>(doc, "pipes", json::array(), "plant")) {
    PipeSpec pipe;
    pipe.id = Require(p, "id", "pipe");
    std::string where = "pipe " + pipe.id;
    pipe.from_silo = Require(p, "from_silo", where);
    pipe.to_silo = Require(p, "to_silo", where);
    pipe.transfer_rate_pct_per_s =
        Get<double>(p, "transfer_rate_pct_per_s", pipe.transfer_rate_pct_per_s, where);
    pipe.port = Port(p, where);
    config.pipes.push_back(std::move(pipe));
  }
  config.ingredient_sources = Get<std::map<std::string, std::string>>(
      doc, "ingredient_sources", {}, "plant");
  config.delivery_silo = Get<std::string>(doc, "delivery_silo", "", "plant");
  ValidatePlantConfig(config);
  return config;
}

PlantConfig LoadPlantConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Invalid("cannot read plant config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto slash = path.rfind('/');
  std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  return ParsePlantConfig(buffer.str(), dir);
}

void ValidatePlantConfig(const PlantConfig& config) {
  std::set<std::string> names;
  for (const auto& s : config.silos) {
    if (!names.insert(s.id).second) Invalid("duplicate unit id " + s.id);
    if (s.capacity_liters <= 0) Invalid("silo " + s.id + ": capacity must be positive");
    if (s.fill_rate_pct_per_s <= 0 || s.empty_rate_pct_per_s <= 0 || s.heat_rate_c_per_s <= 0) {
      Invalid("silo " + s.id + ": rates must be positive");
    }
    if (s.initial_temp_c > s.heat_max_c) {
      Invalid("silo " + s.id + ": initial temperature above heat_max_C");
    }
    if (s.mix_min_s < 0) Invalid("silo " + s.id + ": mix_min_s must be >= 0");
  }
  for (const auto& p : config.pipes) {
    if (!names.insert(p.id).second) Invalid("duplicate unit id " + p.id);
    if (!config.FindSilo(p.from_silo) || !config.FindSilo(p.to_silo)) {
      Invalid("pipe " + p.id + " references an unknown silo");
    }
    if (p.from_silo == p.to_silo) Invalid("pipe " + p.id + " connects a silo to itself");
    if (p.transfer_rate_pct_per_s <= 0) Invalid("pipe " + p.id + ": rate must be positive");
  }
  for (const auto& [ingredient, silo] : config.ingredient_sources) {
    const SiloSpec* s = config.FindSilo(silo);
    if (!s || !s->services.contains(Service::kFill)) {
      Invalid("ingredient " + ingredient + ": source " + silo + " is not a Fill silo");
    }
  }
  if (!config.delivery_silo.empty()) {
    const SiloSpec* s = config.FindSilo(config.delivery_silo);
    if (!s || !s->services.contains(Service::kEmpty)) {
      Invalid("delivery silo " + config.delivery_silo + " must offer Empty");
    }
  }
}

}  // namespace cpms::plant
