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

#ifndef CPMS_BENCH_SCENARIOS_H_
#define CPMS_BENCH_SCENARIOS_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/bench/stats.h"

namespace cpms::bench {

enum class Scenario : uint8_t {
  kDirectCall,
  kInProcChannel,
  kRawUdp1N,
  kRawUdp2N,
  kLwm2m1N,
  kLwm2m2N,
};

std::string_view ScenarioName(Scenario scenario);  // "RawUdp_2N", ...
std::optional<Scenario> ParseScenario(std::string_view name);
std::vector<Scenario> AllScenarios();

// The logical operation every scenario performs: execute a heat action.
inline constexpr std::string_view kHeatPayload = "setpoint=50";
inline constexpr std::string_view kHeatPath = "/26241/0/8";

// The server-side work shared by all scenarios. Returns "2.04" when the
// setpoint is acceptable, "4.00" otherwise.
std::string HandleHeat(std::string_view args);

struct BenchOptions {
  int samples = 1000;
  int warmup = 100;
  // A round trip slower than this is discarded and measured again.
  std::chrono::duration<double> timeout{1.0};
  // Executable started for the 2N scenarios; it must call
  // ServeChildIfRequested first thing in main.
  std::string server_executable = "/proc/self/exe";
};

struct BenchResult {
  Scenario scenario = Scenario::kDirectCall;
  LatencyStats stats;
  int excluded = 0;
};

// Strictly sequential round trips. Throws LaunchError when the 2N server
// process cannot be started.
BenchResult RunBench(Scenario scenario, const BenchOptions& options = {});

// Child side of the 2N scenarios: when argv is
// `<exe> bench-serve --mode raw|coap`, serves on an ephemeral loopback port,
// prints "PORT <n>" on stdout and runs until stdin closes. Returns the exit
// code in that case, nullopt otherwise.
std::optional<int> ServeChildIfRequested(int argc, char** argv);

}  // namespace cpms::bench

#endif  // CPMS_BENCH_SCENARIOS_H_
