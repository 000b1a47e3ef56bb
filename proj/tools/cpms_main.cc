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

// cpms: command-line entry points for the directory, the simulated plant,
// process execution, discovery and the latency benchmark.

#include <signal.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cpms/bench/scenarios.h"
#include "cpms/bench/stats.h"
#include "cpms/coap/endpoint.h"
#include "cpms/common/clock.h"
#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/orchestrator/choreography.h"
#include "cpms/orchestrator/executor.h"
#include "cpms/orchestrator/planner.h"
#include "cpms/plant/runtime.h"
#include "cpms/rd/client.h"
#include "cpms/rd/server.h"
#include "cpms/semantic/term.h"

namespace {

using namespace cpms;

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + path);
  out << text;
}

// Blocks until SIGINT/SIGTERM, or `seconds` when positive.
void WaitForSignal(double seconds) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  if (seconds > 0) {
    timespec ts{static_cast<time_t>(seconds),
                static_cast<long>((seconds - static_cast<time_t>(seconds)) * 1e9)};
    sigtimedwait(&set, nullptr, &ts);
  } else {
    int sig;
    sigwait(&set, &sig);
  }
}

// Signals are taken synchronously by WaitForSignal; block them before any
// thread starts so every thread inherits the mask.
void BlockTermination() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

struct Client {
  std::unique_ptr<coap::Endpoint> endpoint;
  std::unique_ptr<rd::CoapDirectoryClient> directory;
};

Client Connect(const std::string& rd) {
  Client c;
  c.endpoint = coap::Endpoint::Bind(coap::Address::Parse("0.0.0.0:0"));
  c.directory = std::make_unique<rd::CoapDirectoryClient>(*c.endpoint, coap::Address::Parse(rd));
  return c;
}

int RdServe(const std::string& bind, double sweep, double duration) {
  BlockTermination();
  SteadyClock clock;
  auto server = rd::RdServer::Start(coap::Address::Parse(bind), clock,
                                    rd::RdServer::Options{std::chrono::duration<double>(sweep)});
  std::printf("rd listening on %s\n", server->address().ToUri().c_str());
  std::fflush(stdout);
  WaitForSignal(duration);
  return 0;
}

int PlantRun(const std::string& config_path, const std::string& rd, const std::string& time,
             double scale, const std::string& host, double duration) {
  BlockTermination();
  plant::RuntimeOptions options;
  options.mode = time == "real" ? plant::TimeMode::kReal : plant::TimeMode::kVirtual;
  options.scale = scale;
  options.host = host;
  if (!rd.empty()) options.directory = coap::Address::Parse(rd);
  auto runtime = plant::PlantRuntime::Start(plant::LoadPlantConfig(config_path), options);
  for (const auto& unit : runtime->units()) {
    std::printf("%s %s\n", unit.c_str(), runtime->AddressOf(unit).ToUri().c_str());
  }
  std::printf("plant %s running (%s time)\n", runtime->config().name.c_str(), time.c_str());
  std::fflush(stdout);
  WaitForSignal(duration);
  return 0;
}

int ProcessRun(const std::string& pim_path, const std::string& rd, const std::string& mode,
               double timeout, const std::string& trace_path, bool plan_only) {
  Client c = Connect(rd);
  auto pim = orchestrator::LoadProcessSpec(pim_path);
  auto view = orchestrator::LoadPlantView(*c.directory);
  auto binding = mode == "dynamic" ? orchestrator::BindingMode::kDynamic
                                   : orchestrator::BindingMode::kStatic;
  auto plan = orchestrator::TransformPimToPsm(pim, *c.directory, view, binding);
  std::printf("# plan %s (%s)\n%s", plan.process.c_str(),
              std::string(orchestrator::BindingModeName(binding)).c_str(), plan.ToString().c_str());
  if (plan_only) return 0;

  orchestrator::ExecutionOptions options;
  options.step_timeout = std::chrono::duration<double>(timeout);
  auto trace = orchestrator::ExecutePlan(plan, *c.endpoint, *c.directory, view, options);
  std::string text = trace.ToString();
  std::printf("# trace\n%s", text.c_str());
  if (trace.final_batch) {
    std::printf("# delivered %s\n", plant::FormatBatch(*trace.final_batch).c_str());
  }
  if (!trace_path.empty()) WriteText(trace_path, text);
  if (!trace.ok()) {
    std::fprintf(stderr, "%s\n", trace.error_message.c_str());
    return kDomainError;
  }
  return 0;
}

int ProcessChoreo(const std::string& rules_path, const std::string& rd, double quiescence,
                  int budget) {
  Client c = Connect(rd);
  auto choreography = orchestrator::LoadChoreography(rules_path);
  auto view = orchestrator::LoadPlantView(*c.directory);
  orchestrator::ChoreographyOptions options;
  options.quiescence = std::chrono::duration<double>(quiescence);
  options.budget = budget;
  auto result = orchestrator::RunChoreography(choreography, *c.endpoint, view, options);
  std::printf("%s", result.ToString().c_str());
  if (result.error) {
    std::fprintf(stderr, "%s\n", result.error_message.c_str());
    return kDomainError;
  }
  return 0;
}

int Discover(const std::string& query_path, const std::string& rd) {
  Client c = Connect(rd);
  auto matches = c.directory->LookupSemantic(ReadText(query_path));
  std::map<std::string, semantic::PrefixMap> prefixes;
  for (const auto& m : matches) {
    if (!prefixes.contains(m.endpoint)) {
      auto g = c.directory->Description(m.endpoint);
      prefixes[m.endpoint] = g ? g->prefixes() : semantic::PrefixMap{};
    }
    std::string line = m.endpoint;
    for (const auto& [var, term] : m.binding) {
      line += " " + var + "=" + semantic::CompactTerm(term, prefixes[m.endpoint]);
    }
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

int Bench(const std::string& scenario, int n, int warmup, const std::string& out_dir) {
  std::vector<bench::Scenario> scenarios;
  if (scenario == "all") {
    scenarios = bench::AllScenarios();
  } else {
    for (const auto& name : Split(scenario, ',')) {
      auto s = bench::ParseScenario(name);
      if (!s) throw CLI::ValidationError("--scenario", "unknown scenario " + name);
      scenarios.push_back(*s);
    }
  }
  bench::BenchOptions options;
  options.samples = n;
  options.warmup = warmup;
  bench::NamedStats all;
  std::filesystem::create_directories(out_dir);
  for (auto s : scenarios) {
    auto result = bench::RunBench(s, options);
    std::string name(bench::ScenarioName(s));
    WriteText(out_dir + "/bench-" + name + ".csv", bench::SamplesCsv(result.stats.samples));
    if (result.excluded > 0) {
      std::fprintf(stderr, "%s: %d timed-out samples re-measured\n", name.c_str(), result.excluded);
    }
    all.emplace_back(name, std::move(result.stats));
  }
  WriteText(out_dir + "/bench-stats.csv", bench::StatsCsv(all));
  std::printf("Round trip of Execute (ms), n=%d\n%s", n, bench::FormatTable(all).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (auto code = cpms::bench::ServeChildIfRequested(argc, argv)) return *code;

  const char* env_rd = std::getenv("CPMS_RD");
  const std::string default_rd = env_rd ? env_rd : "127.0.0.1:5683";

  CLI::App app{"Cyber-physical microservices: directory, plant, orchestration, benchmark"};
  app.require_subcommand(1);

  auto* rd = app.add_subcommand("rd", "Resource directory");
  rd->require_subcommand(1);
  auto* rd_serve = rd->add_subcommand("serve", "Run a resource directory");
  std::string bind = "127.0.0.1:5683";
  double sweep = 1.0, duration = 0;
  rd_serve->add_option("--bind", bind, "Listen address ip:port")->capture_default_str();
  rd_serve->add_option("--sweep", sweep, "Expiry sweep period in seconds (0 disables)")
      ->capture_default_str();
  rd_serve->add_option("--duration", duration, "Exit after this many seconds (0: until signalled)");

  auto* plant_cmd = app.add_subcommand("plant", "Simulated plant");
  plant_cmd->require_subcommand(1);
  auto* plant_run = plant_cmd->add_subcommand("run", "Run the plant devices");
  std::string config, rd_addr = default_rd, time = "virtual", host = "127.0.0.1";
  double scale = 1.0;
  plant_run->add_option("--config", config, "Plant configuration (JSON)")->required();
  plant_run->add_option("--rd", rd_addr, "Directory address (default $CPMS_RD)");
  plant_run->add_option("--time", time, "virtual|real")
      ->check(CLI::IsMember({"virtual", "real"}))
      ->capture_default_str();
  plant_run->add_option("--scale", scale, "Real-time speed-up")->check(CLI::PositiveNumber);
  plant_run->add_option("--host", host, "Device bind address")->capture_default_str();
  plant_run->add_option("--duration", duration, "Exit after this many seconds (0: until signalled)");

  auto* process = app.add_subcommand("process", "Composite processes");
  process->require_subcommand(1);
  auto* process_run = process->add_subcommand("run", "Plan and execute a process");
  std::string pim, mode = "static", trace_path = "trace.log";
  double step_timeout = 30;
  bool plan_only = false;
  process_run->add_option("--pim", pim, "Process definition (JSON)")->required();
  process_run->add_option("--rd", rd_addr, "Directory address (default $CPMS_RD)");
  process_run->add_option("--mode", mode, "static|dynamic")
      ->check(CLI::IsMember({"static", "dynamic"}))
      ->capture_default_str();
  process_run->add_option("--step-timeout", step_timeout, "Seconds per step")->capture_default_str();
  process_run->add_option("--trace", trace_path, "Trace file (empty: none)")->capture_default_str();
  process_run->add_flag("--plan-only", plan_only, "Print the plan without executing it");

  auto* choreo = process->add_subcommand("choreo", "Run a choreography");
  std::string rules;
  double quiescence = 1.0;
  int budget = 1000;
  choreo->add_option("--rules", rules, "Choreography (JSON)")->required();
  choreo->add_option("--rd", rd_addr, "Directory address (default $CPMS_RD)");
  choreo->add_option("--quiescence", quiescence, "Idle seconds before stopping")
      ->capture_default_str();
  choreo->add_option("--budget", budget, "Maximum rule firings")->capture_default_str();

  auto* discover = app.add_subcommand("discover", "Semantic lookup in the directory");
  std::string query;
  discover->add_option("--query", query, "Query file")->required();
  discover->add_option("--rd", rd_addr, "Directory address (default $CPMS_RD)");

  auto* bench_cmd = app.add_subcommand("bench", "Execute round-trip latency benchmark");
  std::string scenario = "all", out_dir = ".";
  int n = 1000, warmup = 100;
  bench_cmd->add_option("--scenario", scenario, "Scenario name(s), comma separated, or all")
      ->capture_default_str();
  bench_cmd->add_option("--n", n, "Samples per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--warmup", warmup, "Unrecorded round trips")->capture_default_str();
  bench_cmd->add_option("--out", out_dir, "Directory for the CSV files")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (rd_serve->parsed()) return RdServe(bind, sweep, duration);
    if (plant_run->parsed()) return PlantRun(config, rd_addr, time, scale, host, duration);
    if (process_run->parsed()) {
      return ProcessRun(pim, rd_addr, mode, step_timeout, trace_path, plan_only);
    }
    if (choreo->parsed()) return ProcessChoreo(rules, rd_addr, quiescence, budget);
    if (discover->parsed()) return Discover(query, rd_addr);
    if (bench_cmd->parsed()) return Bench(scenario, n, warmup, out_dir);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  } catch (const Error& e) {
    std::fprintf(stderr, "cpms: %s\n", e.what());
    return kDomainError;
  }
  return kUsageError;
}
