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

#ifndef CPMS_ORCHESTRATOR_PLANNER_H_
#define CPMS_ORCHESTRATOR_PLANNER_H_

#include <string>
#include <variant>
#include <vector>

#include "cpms/orchestrator/discovery.h"
#include "cpms/orchestrator/process.h"
#include "cpms/orchestrator/topology.h"

namespace cpms::orchestrator {

enum class BindingMode : uint8_t { kStatic, kDynamic };

std::string_view BindingModeName(BindingMode mode);

struct FillStep {
  std::string endpoint;
  std::string ingredient;
  double volume_pct = 0;
};

struct ApplyStep {
  std::string endpoint;  // planned provider
  std::string path;      // Execute resource, "/26241/0/8"
  ServiceRequest request;
  // Dynamic plans re-check the provider and reserve it only when the step
  // is reached.
  bool deferred = false;
};

struct TransferStep {
  std::string pipe;
  std::string from;
  std::string to;
};

struct EmptyStep {
  std::string endpoint;
};

using BoundStep = std::variant<FillStep, ApplyStep, TransferStep, EmptyStep>;

// "Fill@S1", "Transfer S1->S2", "Heat@S2", "Empty@S1".
std::string StepName(const BoundStep& step);
// Device the step acts on (the pipe for transfers).
std::string StepEndpoint(const BoundStep& step);

struct BoundPlan {
  std::string process;
  BindingMode mode = BindingMode::kStatic;
  std::vector<BoundStep> steps;

  std::vector<std::string> StepNames() const;
  // Every endpoint the plan touches, sorted.
  std::vector<std::string> Endpoints() const;
  // One step per line.
  std::string ToString() const;
};

// Execute resource for a silo service label, or "" when unknown.
std::string SiloOperationPath(const std::string& label);

// Inserts the plant-specific steps around the process: Fill at the
// ingredient source, a shortest pipe route whenever the next service lives
// elsewhere, and the final route to the delivery point plus Empty. A
// service available where the batch already is stays there.
// Throws NoProvider, QoSUnsatisfiable, Unroutable, DirectoryUnreachable.
BoundPlan TransformPimToPsm(const ProcessSpec& pim, rd::DirectoryClient& directory,
                            const PlantView& plant, BindingMode mode);

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_PLANNER_H_
