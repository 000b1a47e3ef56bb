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

#ifndef CPMS_ORCHESTRATOR_PROCESS_H_
#define CPMS_ORCHESTRATOR_PROCESS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/semantic/term.h"

namespace cpms::orchestrator {

struct QosConstraint {
  semantic::Term material;  // default dbpedia:Liquid
  semantic::Term unit;      // default dbpedia:Celsius
  std::optional<double> min_capability;
};

// A requested service of the plant-independent model.
struct ServiceRequest {
  std::string label;  // "Heat", "Mix"
  QosConstraint qos;
  std::map<std::string, std::string> params;  // setpoint=50, duration=30

  std::optional<double> NumericParam(const std::string& name) const;
};

struct ProcessInput {
  std::string ingredient;
  double volume_pct = 0;
};

struct DeliverySpec {
  // Empty means the plant's designated delivery point.
  std::string endpoint;
};

struct ProcessSpec {
  std::string name;
  std::vector<ProcessInput> inputs;
  std::vector<ServiceRequest> steps;
  DeliverySpec delivery;
};

semantic::Term DefaultMaterial();
semantic::Term DefaultUnit();

// Throws InvalidProcess. Fill, Empty and Transfer are plant-specific and
// may not appear among the steps.
void ValidateProcessSpec(const ProcessSpec& spec);

// {name, inputs[{ingredient, volume}], steps[{label, qos{material, unit,
// min_capability}, params{}}], delivery{endpoint}}. Validates.
ProcessSpec ParseProcessSpec(std::string_view json);
ProcessSpec LoadProcessSpec(const std::string& path);

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_PROCESS_H_
