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

#include "cpms/plant/world.h"

#include <algorithm>
#include <cmath>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"

namespace cpms::plant {
namespace {

// Relative tolerance on volumes (fraction of capacity).
constexpr double kVolumeEps = 1e-12;
constexpr double kTimeEps = 1e-9;

[[noreturn]] void Reject(ErrorCode code, const std::string& message) { throw Error(code, message); }

double Liters(const SiloState& s) { return s.batch ? s.batch->Liters() : 0.0; }

void SyncLevel(const SiloSpec& spec, SiloState& s) {
  s.level_pct = Liters(s) / spec.capacity_liters * 100.0;
  if (s.batch) s.batch->temp_c = s.temp_c;
}

void AddIngredient(BatchRecord& batch, const std::string& name, double liters) {
  for (auto& ing : batch.ingredients) {
    if (ing.name == name) {
      ing.liters += liters;
      return;
    }
  }
  batch.ingredients.push_back(Ingredient{name, liters});
}

// Mixes `liters` at `temp` into a body of `current` liters at `body_temp`.
double BlendTemp(double current, double body_temp, double liters, double temp) {
  double total = current + liters;
  if (total <= 0) return body_temp;
  if (current <= 0) return temp;
  return (current * body_temp + liters * temp) / total;
}

std::optional<double> NumberArg(const ActionParams& params, const std::string& key,
                                const std::string& unit) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) return std::nullopt;
  auto value = ParseDouble(it->second);
  if (!value || !std::isfinite(*value)) {
    Reject(ErrorCode::kInvalidConfig, unit + ": bad " + key + "=" + it->second);
  }
  return value;
}

}  // namespace

std::string_view UnitStateName(UnitState state) {
  switch (state) {
    case UnitState::kIdle: return "Idle";
    case UnitState::kFilling: return "Filling";
    case UnitState::kHeating: return "Heating";
    case UnitState::kMixing: return "Mixing";
    case UnitState::kEmptying: return "Emptying";
    case UnitState::kTransferring: return "Transferring";
  }
  return "?";
}

double BatchRecord::Liters() const {
  double total = 0;
  for (const auto& ing : ingredients) total += ing.liters;
  return total;
}

std::string FormatBatch(const BatchRecord& batch) {
  std::string history, ingredients;
  for (const auto& h : batch.history) history += (history.empty() ? "" : ",") + h;
  for (const auto& ing : batch.ingredients) {
    ingredients += (ingredients.empty() ? "" : ",") + ing.name + ":" + FormatNumber(ing.liters);
  }
  return "liters=" + FormatNumber(batch.Liters()) + ";temp=" + FormatNumber(batch.temp_c) +
         ";mixed=" + (batch.mixed ? "true" : "false") + ";history=" + history +
         ";ingredients=" + ingredients;
}

BatchRecord ParseBatch(std::string_view text) {
  auto fail = [&] { Reject(ErrorCode::kInvalidConfig, "bad batch record: " + std::string(text)); };
  BatchRecord batch;
  for (const auto& field : Split(text, ';')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) fail();
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "temp") {
      auto t = ParseDouble(value);
      if (!t) fail();
      batch.temp_c = *t;
    } else if (key == "mixed") {
      batch.mixed = value == "true";
    } else if (key == "history") {
      if (!value.empty()) batch.history = Split(value, ',');
    } else if (key == "ingredients") {
      if (value.empty()) continue;
      for (const auto& item : Split(value, ',')) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos) fail();
        auto liters = ParseDouble(item.substr(colon + 1));
        if (!liters) fail();
        batch.ingredients.push_back(Ingredient{item.substr(0, colon), *liters});
      }
    } else if (key != "liters") {
      fail();
    }
  }
  return batch;
}

World::World(PlantConfig config) : config_(std::move(config)) {
  ValidatePlantConfig(config_);
  for (const auto& spec : config_.silos) {
    SiloState s;
    s.temp_c = spec.initial_temp_c;
    silos_.emplace(spec.id, s);
  }
  for (const auto& spec : config_.pipes) pipes_.emplace(spec.id, PipeState{});
}

const SiloState& World::silo(const std::string& id) const {
  auto it = silos_.find(id);
  if (it == silos_.end()) Reject(ErrorCode::kInvalidConfig, "unknown silo " + id);
  return it->second;
}

SiloState& World::MutableSilo(const std::string& id) {
  return const_cast<SiloState&>(std::as_const(*this).silo(id));
}

const PipeState& World::pipe(const std::string& id) const {
  auto it = pipes_.find(id);
  if (it == pipes_.end()) Reject(ErrorCode::kInvalidConfig, "unknown pipe " + id);
  return it->second;
}

bool World::Active() const {
  for (const auto& [id, s] : silos_) {
    if (s.state != UnitState::kIdle) return true;
  }
  for (const auto& [id, p] : pipes_) {
    if (p.state != UnitState::kIdle) return true;
  }
  return false;
}

double World::StoredLiters() const {
  double total = 0;
  for (const auto& [id, s] : silos_) total += Liters(s);
  return total;
}

void World::StartAction(const std::string& id, Service action, const ActionParams& params) {
  const SiloSpec* spec = config_.FindSilo(id);
  if (!spec) Reject(ErrorCode::kInvalidConfig, "unknown silo " + id);
  SiloState& s = MutableSilo(id);
  if (!spec->services.contains(action)) {
    Reject(ErrorCode::kUnsupportedService, id + " does not offer " + std::string(ServiceName(action)));
  }
  if (s.state != UnitState::kIdle) {
    Reject(ErrorCode::kBusy, id + " is " + std::string(UnitStateName(s.state)));
  }
  const double cap = spec->capacity_liters;
  const double current = Liters(s);
  switch (action) {
    case Service::kFill: {
      auto ingredient = params.find("ingredient");
      s.ingredient = ingredient == params.end() || ingredient->second.empty() ? "unnamed"
                                                                                : ingredient->second;
      if (ingredient != params.end()) {
        auto source = config_.ingredient_sources.find(ingredient->second);
        if (source == config_.ingredient_sources.end() || source->second != id) {
          Reject(ErrorCode::kInvalidConfig, id + " is not a source of " + ingredient->second);
        }
      }
      auto volume = NumberArg(params, "volume", id);
      if (volume && *volume <= 0) Reject(ErrorCode::kInvalidConfig, id + ": volume must be > 0");
      double target = volume ? current + *volume * cap / 100.0 : cap;
      if (target > cap * (1 + kVolumeEps)) {
        Reject(ErrorCode::kOverflow, id + ": fill exceeds capacity");
      }
      if (target <= current) Reject(ErrorCode::kOverflow, id + " is already full");
      s.target_liters = std::min(target, cap);
      s.state = UnitState::kFilling;
      break;
    }
    case Service::kHeat: {
      auto setpoint = NumberArg(params, "setpoint", id);
      if (!setpoint) Reject(ErrorCode::kInvalidConfig, id + ": Heat needs setpoint");
      if (*setpoint > spec->heat_max_c) {
        Reject(ErrorCode::kQoSViolation, id + ": setpoint " + FormatNumber(*setpoint) +
                                             " exceeds max " + FormatNumber(spec->heat_max_c));
      }
      if (current <= 0) Reject(ErrorCode::kInsufficientVolume, id + " is empty");
      s.setpoint_c = *setpoint;
      s.state = UnitState::kHeating;
      break;
    }
    case Service::kMix: {
      double duration = NumberArg(params, "duration", id).value_or(spec->mix_min_s);
      if (duration < spec->mix_min_s) {
        Reject(ErrorCode::kQoSViolation, id + ": mix shorter than " + FormatNumber(spec->mix_min_s) + " s");
      }
      if (current <= 0) Reject(ErrorCode::kInsufficientVolume, id + " is empty");
      s.remaining_s = duration;
      s.state = UnitState::kMixing;
      break;
    }
    case Service::kEmpty: {
      if (current <= 0) Reject(ErrorCode::kInsufficientVolume, id + " is empty");
      BatchRecord out = *s.batch;
      out.ingredients.clear();
      s.outgoing = std::move(out);
      s.state = UnitState::kEmptying;
      break;
    }
  }
}

void World::StartTransfer(const std::string& id, std::optional<double> volume_pct) {
  const PipeSpec* spec = config_.FindPipe(id);
  if (!spec) Reject(ErrorCode::kInvalidConfig, "unknown pipe " + id);
  PipeState& p = pipes_.at(id);
  SiloState& from = MutableSilo(spec->from_silo);
  SiloState& to = MutableSilo(spec->to_silo);
  const SiloSpec& from_spec = *config_.FindSilo(spec->from_silo);
  const SiloSpec& to_spec = *config_.FindSilo(spec->to_silo);
  if (p.state != UnitState::kIdle || from.state != UnitState::kIdle ||
      to.state != UnitState::kIdle) {
    Reject(ErrorCode::kBusy, id + ": pipe or silo busy");
  }
  double available = Liters(from);
  double liters = volume_pct ? *volume_pct * from_spec.capacity_liters / 100.0 : available;
  if (liters <= 0 || available <= 0) Reject(ErrorCode::kInsufficientVolume, spec->from_silo + " is empty");
  if (liters > available * (1 + kVolumeEps)) {
    Reject(ErrorCode::kInsufficientVolume, spec->from_silo + " holds less than requested");
  }
  liters = std::min(liters, available);
  if (Liters(to) + liters > to_spec.capacity_liters * (1 + kVolumeEps)) {
    Reject(ErrorCode::kOverflow, spec->to_silo + " lacks headroom");
  }
  if (from.temp_c > to_spec.heat_max_c) {
    Reject(ErrorCode::kQoSViolation, spec->to_silo + " cannot hold a batch at " +
                                         FormatNumber(from.temp_c) + " C");
  }
  // The destination inherits the batch's record now; liquid flows per tick.
  if (!to.batch || Liters(to) <= 0) {
    BatchRecord b = *from.batch;
    b.ingredients.clear();
    to.batch = std::move(b);
    to.temp_c = from.temp_c;
  } else {
    auto& history = to.batch->history;
    history.insert(history.end(), from.batch->history.begin(), from.batch->history.end());
    to.batch->mixed = false;
  }
  p.remaining_liters = liters;
  p.state = from.state = to.state = UnitState::kTransferring;
}

std::vector<Completion> World::Tick(double dt) {
  std::vector<Completion> done;
  if (!(dt > 0)) return done;
  now_ += dt;
  for (const auto& spec : config_.pipes) TickPipe(spec, pipes_.at(spec.id), dt, done);
  for (const auto& spec : config_.silos) TickSilo(spec, silos_.at(spec.id), dt, done);
  return done;
}

void World::TickSilo(const SiloSpec& spec, SiloState& s, double dt, std::vector<Completion>& done) {
  const double cap = spec.capacity_liters;
  switch (s.state) {
    case UnitState::kIdle:
    case UnitState::kTransferring:  // advanced by the pipe
      return;
    case UnitState::kFilling: {
      double current = Liters(s);
      double step = std::min(spec.fill_rate_pct_per_s * cap / 100.0 * dt, s.target_liters - current);
      if (!s.batch) s.batch = BatchRecord{};
      s.temp_c = BlendTemp(current, s.temp_c, step, spec.initial_temp_c);
      AddIngredient(*s.batch, s.ingredient, step);
      injected_liters_ += step;
      SyncLevel(spec, s);
      if (Liters(s) >= s.target_liters - kVolumeEps * cap) {
        s.batch->history.push_back("Fill");
        s.state = UnitState::kIdle;
        done.push_back({now_, spec.id, "Fill"});
      }
      return;
    }
    case UnitState::kHeating: {
      double delta = spec.heat_rate_c_per_s * dt;
      if (std::abs(s.setpoint_c - s.temp_c) <= delta) {
        s.temp_c = s.setpoint_c;
      } else {
        s.temp_c += s.setpoint_c > s.temp_c ? delta : -delta;
      }
      s.temp_c = std::min(s.temp_c, spec.heat_max_c);
      SyncLevel(spec, s);
      if (s.temp_c == s.setpoint_c) {
        s.batch->history.push_back("Heat");
        s.state = UnitState::kIdle;
        done.push_back({now_, spec.id, "Heat"});
      }
      return;
    }
    case UnitState::kMixing: {
      s.remaining_s -= dt;
      if (s.remaining_s <= kTimeEps) {
        s.remaining_s = 0;
        s.batch->mixed = true;
        s.batch->history.push_back("Mix");
        s.state = UnitState::kIdle;
        done.push_back({now_, spec.id, "Mix"});
      }
      return;
    }
    case UnitState::kEmptying: {
      double current = Liters(s);
      double step = std::min(spec.empty_rate_pct_per_s * cap / 100.0 * dt, current);
      double fraction = current > 0 ? step / current : 1.0;
      if (step >= current) fraction = 1.0;
      for (auto& ing : s.batch->ingredients) {
        double moved = fraction == 1.0 ? ing.liters : ing.liters * fraction;
        AddIngredient(*s.outgoing, ing.name, moved);
        ing.liters -= moved;
      }
      delivered_liters_ += step;
      s.outgoing->temp_c = s.temp_c;
      if (fraction == 1.0) {
        deliveries_.push_back(Delivery{spec.id, now_, std::move(*s.outgoing)});
        s.outgoing.reset();
        s.batch.reset();
        SyncLevel(spec, s);
        s.state = UnitState::kIdle;
        done.push_back({now_, spec.id, "Empty"});
      } else {
        SyncLevel(spec, s);
      }
      return;
    }
  }
}

void World::TickPipe(const PipeSpec& spec, PipeState& p, double dt, std::vector<Completion>& done) {
  if (p.state != UnitState::kTransferring) return;
  const SiloSpec& from_spec = *config_.FindSilo(spec.from_silo);
  const SiloSpec& to_spec = *config_.FindSilo(spec.to_silo);
  SiloState& from = silos_.at(spec.from_silo);
  SiloState& to = silos_.at(spec.to_silo);

  const double eps = kVolumeEps * from_spec.capacity_liters;
  double available = Liters(from);
  double step = std::min({spec.transfer_rate_pct_per_s * from_spec.capacity_liters / 100.0 * dt,
                          p.remaining_liters, available});
  bool drains = step >= available - eps;
  if (drains) step = available;
  bool last = drains || step >= p.remaining_liters - eps;
  double fraction = available > 0 ? step / available : 1.0;
  double before = Liters(to);
  for (auto& ing : from.batch->ingredients) {
    double moved = drains ? ing.liters : ing.liters * fraction;
    AddIngredient(*to.batch, ing.name, moved);
    ing.liters -= moved;
  }
  to.temp_c = BlendTemp(before, to.temp_c, step, from.temp_c);
  p.remaining_liters -= step;
  if (drains) from.batch.reset();
  SyncLevel(from_spec, from);
  SyncLevel(to_spec, to);
  if (last) {
    p.remaining_liters = 0;
    p.state = from.state = to.state = UnitState::kIdle;
    done.push_back({now_, spec.id, "Transfer"});
  }
}

}  // namespace cpms::plant
