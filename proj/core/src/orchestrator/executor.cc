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

#include "cpms/orchestrator/executor.h"

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "cpms/common/strings.h"
#include "cpms/lwm2m/device.h"
#include "cpms/plant/objects.h"

namespace cpms::orchestrator {
namespace {

namespace codes = coap::codes;
using Seconds = std::chrono::duration<double>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool IsSilo(const PlantView& plant, const std::string& endpoint) {
  return plant.silos.contains(endpoint);
}

std::string InstancePath(const PlantView& plant, const std::string& endpoint) {
  return "/" + std::to_string(IsSilo(plant, endpoint) ? plant::kSiloObject : plant::kPipeObject) +
         "/0";
}

coap::Address AddressOf(const PlantView& plant, const std::string& endpoint) {
  auto it = plant.addresses.find(endpoint);
  if (it == plant.addresses.end()) {
    throw Error(ErrorCode::kUnreachableEndpoint, endpoint + " is not registered");
  }
  return it->second;
}

coap::CoapMessage Call(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
                       coap::CoapMessage request, const coap::RequestOptions& options) {
  try {
    return client.Request(AddressOf(plant, endpoint), std::move(request), options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTimeout || e.code() == ErrorCode::kResetReceived) {
      throw Error(ErrorCode::kUnreachableEndpoint, endpoint + ": " + e.what());
    }
    throw;
  }
}

[[noreturn]] void Refused(const std::string& endpoint, const coap::CoapMessage& response) {
  std::string body = response.PayloadString();
  if (response.code == codes::kConflict && body == lwm2m::kReservedByOther) {
    throw Error(ErrorCode::kReservationLost, endpoint + " is reserved by another holder");
  }
  throw Error(ErrorCode::kDeviceError,
              endpoint + " answered " + response.code.ToString() + (body.empty() ? "" : " " + body));
}

std::string NewHolder(const std::string& process) {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return process + "-" + buf;
}

// Units whose reservation a step needs.
std::vector<std::string> StepUnits(const BoundStep& step) {
  if (const auto* t = std::get_if<TransferStep>(&step)) {
    std::set<std::string> units{t->pipe, t->from, t->to};
    return {units.begin(), units.end()};
  }
  return {StepEndpoint(step)};
}

class Run {
 public:
  Run(const BoundPlan& plan, coap::Endpoint& client, rd::DirectoryClient& directory,
      const PlantView& plant, const ExecutionOptions& options)
      : plan_(plan), client_(client), directory_(directory), plant_(plant), options_(options) {
    trace_.process = plan.process;
    trace_.holder = options.holder.empty() ? NewHolder(plan.process) : options.holder;
    start_ = std::chrono::steady_clock::now();
  }

  ProcessTrace Execute() {
    try {
      if (plan_.mode == BindingMode::kStatic) {
        std::vector<std::string> all;
        for (const auto& step : plan_.steps) {
          for (auto& u : StepUnits(step)) all.push_back(u);
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        Acquire(all);
      }
      for (const BoundStep& step : plan_.steps) RunStep(step);
    } catch (const Error& e) {
      trace_.error = e.code();
      trace_.error_message = e.what();
    }
    ReleaseAll();
    return std::move(trace_);
  }

 private:
  double Now() const { return Seconds(std::chrono::steady_clock::now() - start_).count(); }

  void Acquire(const std::vector<std::string>& units) {
    for (const std::string& unit : units) {
      if (held_.contains(unit)) continue;
      double started = Now();
      Seconds backoff = options_.reserve_backoff;
      for (int attempt = 1;; ++attempt) {
        try {
          Reserve(client_, plant_, unit, trace_.holder, options_.request);
          held_.insert(unit);
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kBusy || attempt >= options_.reserve_attempts) {
            trace_.steps.push_back({"Reserve", unit, started, Now(), Outcome(e)});
            throw;
          }
        }
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
    }
  }

  void ReleaseAll() {
    for (const std::string& unit : held_) {
      try {
        Release(client_, plant_, unit, trace_.holder, options_.request);
      } catch (const Error&) {
        // The device is gone or the reservation already lapsed.
      }
    }
    held_.clear();
  }

  static std::string Outcome(const Error& e) {
    return "error(" + std::string(ErrorCodeName(e.code())) + ")";
  }

  void RunStep(const BoundStep& step) {
    StepRecord record{StepName(step), StepEndpoint(step), Now(), 0, "ok"};
    try {
      if (plan_.mode == BindingMode::kDynamic) {
        if (const auto* apply = std::get_if<ApplyStep>(&step); apply && apply->deferred) {
          Revalidate(*apply);
        }
        Acquire(StepUnits(step));
      }
      Perform(step);
      if (plan_.mode == BindingMode::kDynamic) ReleaseAll();
    } catch (const Error& e) {
      record.end_ts = Now();
      record.outcome = Outcome(e);
      trace_.steps.push_back(record);
      throw;
    }
    record.end_ts = Now();
    trace_.steps.push_back(record);
  }

  // The planned provider must still satisfy the request.
  void Revalidate(const ApplyStep& step) {
    auto candidates = Discover(directory_, step.request);
    bool still = std::any_of(candidates.begin(), candidates.end(),
                             [&](const Candidate& c) { return c.endpoint == step.endpoint; });
    if (!still) {
      throw Error(ErrorCode::kNoProvider,
                  step.endpoint + " no longer provides " + step.request.label);
    }
  }

  void Write(const std::string& endpoint, const std::string& path, const std::string& value) {
    auto response = Call(client_, plant_, endpoint,
                         coap::MakeRequest(codes::kPut, path, value, "holder=" + trace_.holder),
                         options_.request);
    if (!coap::IsSuccess(response)) Refused(endpoint, response);
  }

  void Perform(const BoundStep& step) {
    std::string endpoint = StepEndpoint(step);
    std::string base = InstancePath(plant_, endpoint);
    std::string path, args;
    std::visit(Overloaded{
                   [&](const FillStep& s) {
                     path = SiloOperationPath("Fill");
                     args = "ingredient=" + s.ingredient + "&volume=" + FormatNumber(s.volume_pct);
                   },
                   [&](const ApplyStep& s) {
                     path = s.path;
                     if (auto v = s.request.params.find("setpoint"); v != s.request.params.end()) {
                       Write(endpoint, base + "/" + std::to_string(plant::silo_res::kHeatSetpoint),
                             v->second);
                     }
                     if (auto v = s.request.params.find("duration"); v != s.request.params.end()) {
                       Write(endpoint, base + "/" + std::to_string(plant::silo_res::kMixDuration),
                             v->second);
                     }
                   },
                   [&](const TransferStep&) {
                     path = base + "/" + std::to_string(plant::pipe_res::kTransfer);
                     args = "volume=all";
                   },
                   [&](const EmptyStep&) { path = SiloOperationPath("Empty"); },
               },
               step);

    // Watch the unit's State; the step is done when it is back to Idle
    // after having left it.
    std::mutex mu;
    std::condition_variable cv;
    bool left_idle = false, done = false;
    const std::string state_path = base + "/" + std::to_string(plant::silo_res::kState);
    auto observation = client_.Observe(
        AddressOf(plant_, endpoint), coap::MakeRequest(codes::kGet, state_path),
        [&](const coap::CoapMessage& n) {
          std::lock_guard lock(mu);
          if (n.PayloadString() != "Idle") {
            left_idle = true;
          } else if (left_idle) {
            done = true;
          }
          cv.notify_all();
        },
        options_.request);
    if (!observation->established()) {
      throw Error(ErrorCode::kDeviceError, endpoint + " refused observation of " + state_path);
    }

    auto response = Call(client_, plant_, endpoint,
                         coap::MakeRequest(codes::kPost, path, args, "holder=" + trace_.holder),
                         options_.request);
    if (response.code != codes::kChanged) Refused(endpoint, response);

    std::unique_lock lock(mu);
    if (!cv.wait_for(lock, options_.step_timeout, [&] { return done; })) {
      throw Error(ErrorCode::kStepTimeout, StepName(step) + " did not finish");
    }
    lock.unlock();
    observation->Cancel();

    if (std::holds_alternative<EmptyStep>(step)) {
      auto delivered = Call(
          client_, plant_, endpoint,
          coap::MakeRequest(codes::kGet, base + "/" + std::to_string(plant::silo_res::kDelivered)),
          options_.request);
      if (coap::IsSuccess(delivered) && !delivered.payload.empty()) {
        trace_.final_batch = plant::ParseBatch(delivered.PayloadString());
      }
    }
  }

  const BoundPlan& plan_;
  coap::Endpoint& client_;
  rd::DirectoryClient& directory_;
  const PlantView& plant_;
  const ExecutionOptions& options_;
  ProcessTrace trace_;
  std::set<std::string> held_;
  std::chrono::steady_clock::time_point start_;
};

void SetReserved(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
                 const std::string& holder, bool value, const coap::RequestOptions& options) {
  std::string path = InstancePath(plant, endpoint) + "/" + std::to_string(plant::silo_res::kReserved);
  auto response = Call(client, plant, endpoint,
                       coap::MakeRequest(codes::kPut, path, value ? "true" : "false",
                                         "holder=" + holder),
                       options);
  if (coap::IsSuccess(response)) return;
  if (value && response.code == codes::kConflict) {
    throw Error(ErrorCode::kBusy, endpoint + " is reserved");
  }
  Refused(endpoint, response);
}

}  // namespace

void Reserve(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
             const std::string& holder, const coap::RequestOptions& options) {
  SetReserved(client, plant, endpoint, holder, true, options);
}

void Release(coap::Endpoint& client, const PlantView& plant, const std::string& endpoint,
             const std::string& holder, const coap::RequestOptions& options) {
  SetReserved(client, plant, endpoint, holder, false, options);
}

std::string ProcessTrace::ToString(bool with_timestamps) const {
  std::string out;
  for (const StepRecord& r : steps) {
    char ts[32];
    std::snprintf(ts, sizeof ts, "%.3f", r.end_ts);
    out += (with_timestamps ? std::string(ts) : std::string("-")) + "\t" + r.step + "\t" +
           r.endpoint + "\t" + r.outcome + "\n";
  }
  return out;
}

ProcessTrace ExecutePlan(const BoundPlan& plan, coap::Endpoint& client,
                         rd::DirectoryClient& directory, const PlantView& plant,
                         const ExecutionOptions& options) {
  return Run(plan, client, directory, plant, options).Execute();
}

}  // namespace cpms::orchestrator
