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

#ifndef CPMS_PLANT_WORLD_H_
#define CPMS_PLANT_WORLD_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/plant/config.h"

namespace cpms::plant {

enum class UnitState : uint8_t { kIdle, kFilling, kHeating, kMixing, kEmptying, kTransferring };

std::string_view UnitStateName(UnitState state);  // "Idle", "Filling", ...

struct Ingredient {
  std::string name;
  double liters = 0;

  friend bool operator==(const Ingredient&, const Ingredient&) = default;
};

struct BatchRecord {
  std::vector<Ingredient> ingredients;
  double temp_c = 0;
  bool mixed = false;
  std::vector<std::string> history;  // applied services: Fill, Heat, Mix

  double Liters() const;
  friend bool operator==(const BatchRecord&, const BatchRecord&) = default;
};

// "liters=50;temp=50;mixed=true;history=Fill,Heat,Mix;ingredients=base:50".
std::string FormatBatch(const BatchRecord& batch);
// Throws InvalidConfig on malformed text.
BatchRecord ParseBatch(std::string_view text);

struct SiloState {
  double level_pct = 0;
  double temp_c = 0;
  UnitState state = UnitState::kIdle;
  std::optional<BatchRecord> batch;

  // Progress of the current action.
  std::string ingredient;
  double setpoint_c = 0;
  double remaining_s = 0;
  double target_liters = 0;  // Filling
  std::optional<BatchRecord> outgoing;  // Emptying: what has left so far
};

struct PipeState {
  UnitState state = UnitState::kIdle;
  double remaining_liters = 0;
};

struct Delivery {
  std::string silo;
  double time = 0;
  BatchRecord batch;
};

// Emitted when a unit returns to Idle.
struct Completion {
  double time = 0;
  std::string unit;
  std::string action;  // Fill, Empty, Heat, Mix, Transfer
};

using ActionParams = std::map<std::string, std::string>;

// The mechanical world: silos and pipes advanced together by Tick. Levels are
// percentages of a silo's capacity; batch volumes are liters. Rejections
// throw Error with kBusy, kQoSViolation, kUnsupportedService,
// kInsufficientVolume, kOverflow or kInvalidConfig (bad arguments).
class World {
 public:
  explicit World(PlantConfig config);

  // Fill: ingredient=NAME, volume=PCT (default: up to full).
  // Heat: setpoint=C. Mix: duration=S. Empty: no arguments.
  void StartAction(const std::string& silo, Service action, const ActionParams& params);
  // volume in percent of the source capacity; nullopt moves everything.
  void StartTransfer(const std::string& pipe, std::optional<double> volume_pct);

  std::vector<Completion> Tick(double dt);

  bool Active() const;
  double now() const { return now_; }
  const PlantConfig& config() const { return config_; }
  const SiloState& silo(const std::string& id) const;
  const PipeState& pipe(const std::string& id) const;
  const std::vector<Delivery>& deliveries() const { return deliveries_; }

  double StoredLiters() const;
  double injected_liters() const { return injected_liters_; }
  double delivered_liters() const { return delivered_liters_; }

 private:
  SiloState& MutableSilo(const std::string& id);
  void TickSilo(const SiloSpec& spec, SiloState& s, double dt, std::vector<Completion>& done);
  void TickPipe(const PipeSpec& spec, PipeState& p, double dt, std::vector<Completion>& done);

  PlantConfig config_;
  double now_ = 0;
  std::map<std::string, SiloState> silos_;
  std::map<std::string, PipeState> pipes_;
  std::vector<Delivery> deliveries_;
  double injected_liters_ = 0;
  double delivered_liters_ = 0;
};

}  // namespace cpms::plant

#endif  // CPMS_PLANT_WORLD_H_
