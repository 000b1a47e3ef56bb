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

#ifndef CPMS_PLANT_CONFIG_H_
#define CPMS_PLANT_CONFIG_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cpms::plant {

enum class Service : uint8_t { kFill, kEmpty, kHeat, kMix };

std::string_view ServiceName(Service service);  // "Fill", ...
std::optional<Service> ParseService(std::string_view name);

struct SiloSpec {
  std::string id;
  double capacity_liters = 100;
  double initial_temp_c = 20;
  std::set<Service> services;
  double heat_max_c = 100;
  double heat_rate_c_per_s = 2;
  double fill_rate_pct_per_s = 10;
  double empty_rate_pct_per_s = 10;
  double mix_min_s = 0;
  // Optional turtle file that replaces the generated description.
  std::string description_file;
  std::optional<uint16_t> port;
};

struct PipeSpec {
  std::string id;
  std::string from_silo;
  std::string to_silo;
  double transfer_rate_pct_per_s = 10;
  std::optional<uint16_t> port;
};

struct PlantConfig {
  std::string name;
  std::vector<SiloSpec> silos;
  std::vector<PipeSpec> pipes;
  std::map<std::string, std::string> ingredient_sources;  // ingredient -> silo
  std::string delivery_silo;

  const SiloSpec* FindSilo(std::string_view id) const;
  const PipeSpec* FindPipe(std::string_view id) const;
};

// Throws InvalidConfig naming the offending field.
PlantConfig ParsePlantConfig(std::string_view json, std::string_view base_dir = {});
PlantConfig LoadPlantConfig(const std::string& path);
void ValidatePlantConfig(const PlantConfig& config);

}  // namespace cpms::plant

#endif  // CPMS_PLANT_CONFIG_H_
