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

#ifndef CPMS_ORCHESTRATOR_EXECUTOR_H_
#define CPMS_ORCHESTRATOR_EXECUTOR_H_

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/common/error.h"
#include "cpms/orchestrator/planner.h"
#include "cpms/orchestrator/topology.h"
#include "cpms/plant/world.h"
#include "cpms/rd/client.h"

namespace cpms::orchestrator {

// Compare-and-set on the device's Reserved resource, false -> true.
// Throws Busy when another holder has it, UnreachableEndpoint on timeout,
// DeviceError otherwise.
void Reserve(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
             const std::string& holder, const coap::RequestOptions& options = {});
// Throws DeviceError when `holder` does not hold the reservation.
void Release(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
             const std::string& holder, const coap::RequestOptions& options = {});

struct StepRecord {
  std::string step;
  std::string endpoint;
  double start_ts = 0;
  double end_ts = 0;
  std::string outcome;  // "ok" or "error(<reason>)"
};

struct ProcessTrace {
  std::string process;
  std::string holder;
  std::vector<StepRecord> steps;
  std::optional<plant::BatchRecord> final_batch;
  std::optional<ErrorCode> error;
  std::string error_message;

  bool ok() const { return !error; }
  // `ts step endpoint outcome`, tab separated, timestamps in seconds since
  // the start of the run.
  std::string ToString(bool with_timestamps = true) const;
};

struct ExecutionOptions {
  // Empty: "<process>-<random hex>".
  std::string holder;
  std::chrono::duration<double> step_timeout{30.0};
  coap::RequestOptions request;
  // Reservation contention: attempts with exponential backoff.
  int reserve_attempts = 5;
  std::chrono::duration<double> reserve_backoff{0.1};
};

// Runs the plan step by step: write the parameters, Execute, then wait for
// the unit's State to return to Idle. Static plans reserve every endpoint
// up front (in name order); dynamic plans reserve each step's units just
// before the step and release them after. On failure the reservations are
// released and the partial trace is returned with `error` set.
ProcessTrace ExecutePlan(const BoundPlan& plan, coap::Endpoint& client,
                         rd::DirectoryClient& directory, const PlantView& plant,
                         const ExecutionOptions& options = {});

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_EXECUTOR_H_
