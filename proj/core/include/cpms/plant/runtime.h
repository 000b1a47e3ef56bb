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

#ifndef CPMS_PLANT_RUNTIME_H_
#define CPMS_PLANT_RUNTIME_H_

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/lwm2m/device.h"
#include "cpms/lwm2m/registrar.h"
#include "cpms/plant/config.h"
#include "cpms/plant/world.h"
#include "cpms/semantic/graph.h"

namespace cpms::plant {

enum class TimeMode : uint8_t { kVirtual, kReal };

struct RuntimeOptions {
  // Virtual: the world advances in fixed steps of `virtual_dt`, as fast as
  // possible, and only while some unit is busy. Real: every `real_tick` of
  // wall time advances it by real_tick * scale.
  TimeMode mode = TimeMode::kVirtual;
  double scale = 1.0;
  double virtual_dt = 0.1;
  std::chrono::duration<double> real_tick{0.02};
  std::string host = "127.0.0.1";
  // When set, every unit registers itself there.
  std::optional<coap::Address> directory;
  lwm2m::RegistrarOptions registration;
};

// One Execute as seen by the plant.
struct ActionRecord {
  double time = 0;
  std::string unit;
  std::string action;
  std::string holder;       // request holder token, may be empty
  std::string reserved_by;  // reservation holder(s) of the touched units
  bool accepted = false;
  std::string detail;       // rejection reason
};

// The simulated plant behind the network: a World plus one LwM2M device and
// CoAP endpoint per silo and per pipe. Endpoint names are the unit ids.
class PlantRuntime {
 public:
  // Throws InvalidConfig, BindError, DirectoryUnreachable,
  // RejectedRegistration.
  static std::unique_ptr<PlantRuntime> Start(PlantConfig config, RuntimeOptions options = {});
  ~PlantRuntime();

  PlantRuntime(const PlantRuntime&) = delete;
  PlantRuntime& operator=(const PlantRuntime&) = delete;

  std::vector<std::string> units() const;
  coap::Address AddressOf(const std::string& unit) const;
  lwm2m::Device& device(const std::string& unit);
  const semantic::Graph& description(const std::string& unit) const;
  const PlantConfig& config() const { return config_; }

  World Snapshot() const;
  std::vector<ActionRecord> action_log() const;
  double now() const;
  // True once no unit is busy.
  bool WaitIdle(std::chrono::duration<double> timeout) const;

  // Deregisters every unit from the directory.
  void Deregister();

 private:
  struct Unit {
    std::string id;
    bool is_pipe = false;
    std::unique_ptr<lwm2m::Device> device;
    std::unique_ptr<coap::Endpoint> endpoint;
    std::unique_ptr<lwm2m::Registrar> registrar;
    semantic::Graph description;
  };

  PlantRuntime(PlantConfig config, RuntimeOptions options);

  void Build();
  void RegisterAll();
  coap::CoapMessage ExecuteSilo(const std::string& id, const lwm2m::ActionContext& context);
  coap::CoapMessage ExecutePipe(const std::string& id, const lwm2m::ActionContext& context);
  std::string HolderOf(const std::string& unit) const;
  void Log(ActionRecord record);
  // Callers hold mu_.
  void SyncLocked(const std::vector<Completion>& completions);
  void TickLoop();

  const PlantConfig config_;
  const RuntimeOptions options_;
  std::map<std::string, Unit> units_;

  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  World world_;
  std::vector<ActionRecord> log_;
  bool stop_ = false;
  std::thread ticker_;
};

}  // namespace cpms::plant

#endif  // CPMS_PLANT_RUNTIME_H_
