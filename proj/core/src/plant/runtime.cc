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

#include "cpms/plant/runtime.h"

#include <fstream>
#include <sstream>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/lwm2m/descriptor.h"
#include "cpms/plant/descriptions.h"
#include "cpms/plant/objects.h"
#include "cpms/semantic/turtle.h"

namespace cpms::plant {
namespace {

using coap::CoapMessage;
using coap::MakeResponse;
using lwm2m::ResourcePath;
namespace codes = coap::codes;

ResourcePath SiloPath(int rid) { return {kSiloObject, 0, rid}; }
ResourcePath PipePath(int rid) { return {kPipeObject, 0, rid}; }

std::optional<Service> ServiceOfResource(int rid) {
  switch (rid) {
    case silo_res::kFill: return Service::kFill;
    case silo_res::kEmpty: return Service::kEmpty;
    case silo_res::kHeat: return Service::kHeat;
    case silo_res::kMix: return Service::kMix;
    default: return std::nullopt;
  }
}

int ResourceOfService(Service service) {
  switch (service) {
    case Service::kFill: return silo_res::kFill;
    case Service::kEmpty: return silo_res::kEmpty;
    case Service::kHeat: return silo_res::kHeat;
    case Service::kMix: return silo_res::kMix;
  }
  return -1;
}

CoapMessage Rejection(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kBusy:
      return MakeResponse(codes::kConflict, lwm2m::kBusy);
    case ErrorCode::kUnsupportedService:
      return MakeResponse(codes::kNotFound, e.what());
    default:
      return MakeResponse(codes::kBadRequest, e.what());
  }
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// The published maximum temperature must agree with the simulated one.
void CheckPublishedHeatMax(const SiloSpec& spec, const semantic::Graph& description) {
  using semantic::Term;
  namespace vocab = semantic::vocab;
  for (const auto& t : description.Match(std::nullopt, Term::Iri(vocab::Rdf("type")),
                                         Term::Iri(vocab::Lps("MaxTemperature")))) {
    for (const auto& v : description.Match(t.subject, Term::Iri(vocab::Lps("hasValue")),
                                           std::nullopt)) {
      auto published = v.object.NumericValue();
      if (!published || *published != spec.heat_max_c) {
        throw Error(ErrorCode::kInvalidConfig,
                    "silo " + spec.id + ": heat_max_C " + FormatNumber(spec.heat_max_c) +
                        " differs from the published maximum " + v.object.ToString());
      }
    }
  }
}

std::string NumberText(const lwm2m::Value& value) {
  if (const double* d = std::get_if<double>(&value)) return FormatNumber(*d);
  return lwm2m::FormatValue(value);
}

}  // namespace

std::unique_ptr<PlantRuntime> PlantRuntime::Start(PlantConfig config, RuntimeOptions options) {
  std::unique_ptr<PlantRuntime> runtime(new PlantRuntime(std::move(config), std::move(options)));
  runtime->Build();
  runtime->RegisterAll();
  runtime->ticker_ = std::thread([r = runtime.get()] { r->TickLoop(); });
  return runtime;
}

PlantRuntime::PlantRuntime(PlantConfig config, RuntimeOptions options)
    : config_(std::move(config)), options_(std::move(options)), world_(config_) {
  if (options_.virtual_dt <= 0 || options_.scale <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "time step and scale must be positive");
  }
}

PlantRuntime::~PlantRuntime() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  if (ticker_.joinable()) ticker_.join();
  for (auto& [id, unit] : units_) unit.registrar.reset();
  // Endpoints go first: their receive threads call into the devices.
  for (auto& [id, unit] : units_) unit.endpoint.reset();
}

void PlantRuntime::Build() {
  for (const SiloSpec& spec : config_.silos) {
    Unit unit;
    unit.id = spec.id;
    unit.device = std::make_unique<lwm2m::Device>(spec.id, std::vector{SiloObject()});
    lwm2m::ObjectInstance instance{kSiloObject, 0, {}, {}};
    instance.values = {
        {silo_res::kLevel, 0.0},
        {silo_res::kTemperature, spec.initial_temp_c},
        {silo_res::kState, std::string(UnitStateName(UnitState::kIdle))},
        {silo_res::kReserved, false},
        {silo_res::kHeatSetpoint, spec.initial_temp_c},
        {silo_res::kMixDuration, spec.mix_min_s},
        {silo_res::kLastCompleted, std::string()},
        {silo_res::kBatch, std::string()},
        {silo_res::kDelivered, std::string()},
        {silo_res::kCapacity, spec.capacity_liters},
        {silo_res::kHeatMax, spec.heat_max_c},
    };
    for (Service s : spec.services) instance.executables.insert(ResourceOfService(s));
    unit.device->AddInstance(instance);
    unit.device->SetExecuteHook(
        [this, id = spec.id](const lwm2m::ActionContext& c) { return ExecuteSilo(id, c); });
    unit.description = spec.description_file.empty()
                           ? DescribeSilo(spec, config_)
                           : semantic::ParseTurtle(ReadText(spec.description_file));
    CheckPublishedHeatMax(spec, unit.description);
    units_.emplace(spec.id, std::move(unit));
  }
  for (const PipeSpec& spec : config_.pipes) {
    Unit unit;
    unit.id = spec.id;
    unit.is_pipe = true;
    unit.device = std::make_unique<lwm2m::Device>(spec.id, std::vector{PipeObject()});
    lwm2m::ObjectInstance instance{kPipeObject, 0, {}, {pipe_res::kTransfer}};
    instance.values = {
        {pipe_res::kFrom, spec.from_silo},
        {pipe_res::kTo, spec.to_silo},
        {pipe_res::kState, std::string(UnitStateName(UnitState::kIdle))},
        {pipe_res::kReserved, false},
        {pipe_res::kRate, spec.transfer_rate_pct_per_s},
        {pipe_res::kLastCompleted, std::string()},
    };
    unit.device->AddInstance(instance);
    unit.device->SetExecuteHook(
        [this, id = spec.id](const lwm2m::ActionContext& c) { return ExecutePipe(id, c); });
    unit.description = DescribePipe(spec);
    units_.emplace(spec.id, std::move(unit));
  }
  auto port_of = [&](const std::string& id) -> uint16_t {
    if (const SiloSpec* s = config_.FindSilo(id); s && s->port) return *s->port;
    if (const PipeSpec* p = config_.FindPipe(id); p && p->port) return *p->port;
    return 0;
  };
  for (auto& [id, unit] : units_) {
    coap::Address bind = coap::Address::Parse(options_.host + ":" + std::to_string(port_of(id)));
    unit.endpoint = lwm2m::ServeDevice(*unit.device, bind);
  }
}

void PlantRuntime::RegisterAll() {
  if (!options_.directory) return;
  for (auto& [id, unit] : units_) {
    lwm2m::CpmsDescriptor descriptor;
    descriptor.endpoint_name = id;
    descriptor.description = unit.description;
    descriptor.hosted_objects = unit.device->instances();
    lwm2m::Validate(descriptor, unit.device->objects());
    unit.registrar = std::make_unique<lwm2m::Registrar>(
        *unit.endpoint, *options_.directory, id,
        lwm2m::RegistrationLinks(descriptor, unit.device->objects()), unit.description,
        options_.registration);
    unit.registrar->Register();
  }
}

void PlantRuntime::Deregister() {
  for (auto& [id, unit] : units_) {
    if (unit.registrar) unit.registrar->Deregister();
  }
}

std::vector<std::string> PlantRuntime::units() const {
  std::vector<std::string> ids;
  for (const auto& [id, unit] : units_) ids.push_back(id);
  return ids;
}

coap::Address PlantRuntime::AddressOf(const std::string& unit) const {
  auto it = units_.find(unit);
  if (it == units_.end()) throw Error(ErrorCode::kUnknownEndpoint, unit);
  return it->second.endpoint->address();
}

lwm2m::Device& PlantRuntime::device(const std::string& unit) {
  auto it = units_.find(unit);
  if (it == units_.end()) throw Error(ErrorCode::kUnknownEndpoint, unit);
  return *it->second.device;
}

const semantic::Graph& PlantRuntime::description(const std::string& unit) const {
  auto it = units_.find(unit);
  if (it == units_.end()) throw Error(ErrorCode::kUnknownEndpoint, unit);
  return it->second.description;
}

World PlantRuntime::Snapshot() const {
  std::lock_guard lock(mu_);
  return world_;
}

std::vector<ActionRecord> PlantRuntime::action_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

double PlantRuntime::now() const {
  std::lock_guard lock(mu_);
  return world_.now();
}

bool PlantRuntime::WaitIdle(std::chrono::duration<double> timeout) const {
  std::unique_lock lock(mu_);
  return cv_.wait_for(lock, timeout, [&] { return !world_.Active(); });
}

std::string PlantRuntime::HolderOf(const std::string& unit) const {
  auto it = units_.find(unit);
  if (it == units_.end()) return {};
  int object = it->second.is_pipe ? kPipeObject : kSiloObject;
  return it->second.device->ReservationHolder(object, 0).value_or("");
}

CoapMessage PlantRuntime::ExecuteSilo(const std::string& id, const lwm2m::ActionContext& context) {
  ActionRecord record;
  record.unit = id;
  record.holder = context.holder.value_or("");
  record.reserved_by = HolderOf(id);
  std::optional<Service> service =
      context.path.resource_id ? ServiceOfResource(*context.path.resource_id) : std::nullopt;
  if (!service) return MakeResponse(codes::kMethodNotAllowed);
  record.action = std::string(ServiceName(*service));

  ActionParams params = ParseArgs(context.args);
  lwm2m::Device& dev = *units_.at(id).device;
  if (*service == Service::kHeat && !params.contains("setpoint")) {
    params["setpoint"] = NumberText(*dev.GetValue(SiloPath(silo_res::kHeatSetpoint)));
  }
  if (*service == Service::kMix && !params.contains("duration")) {
    params["duration"] = NumberText(*dev.GetValue(SiloPath(silo_res::kMixDuration)));
  }

  std::unique_lock lock(mu_);
  record.time = world_.now();
  try {
    world_.StartAction(id, *service, params);
  } catch (const Error& e) {
    record.detail = e.what();
    log_.push_back(record);
    return Rejection(e);
  }
  record.accepted = true;
  log_.push_back(record);
  SyncLocked({});
  lock.unlock();
  cv_.notify_all();
  return MakeResponse(codes::kChanged);
}

CoapMessage PlantRuntime::ExecutePipe(const std::string& id, const lwm2m::ActionContext& context) {
  const PipeSpec& spec = *config_.FindPipe(id);
  ActionRecord record;
  record.unit = id;
  record.action = "Transfer";
  record.holder = context.holder.value_or("");
  if (context.path.resource_id != pipe_res::kTransfer) return MakeResponse(codes::kMethodNotAllowed);

  // A transfer touches both silos, so their reservations apply too.
  std::string from_holder = HolderOf(spec.from_silo);
  std::string to_holder = HolderOf(spec.to_silo);
  record.reserved_by = HolderOf(id);
  for (const std::string& h : {from_holder, to_holder}) {
    if (!h.empty() && record.reserved_by.find(h) == std::string::npos) {
      record.reserved_by += (record.reserved_by.empty() ? "" : ",") + h;
    }
  }
  for (const std::string& h : {from_holder, to_holder}) {
    if (!h.empty() && h != record.holder) {
      std::lock_guard lock(mu_);
      record.time = world_.now();
      record.detail = "silo reserved by another holder";
      log_.push_back(record);
      return MakeResponse(codes::kConflict, lwm2m::kReservedByOther);
    }
  }

  ActionParams params = ParseArgs(context.args);
  std::optional<double> volume;
  if (auto it = params.find("volume"); it != params.end() && it->second != "all") {
    volume = ParseDouble(it->second);
    if (!volume) return MakeResponse(codes::kBadRequest, "volume must be a number or all");
  }

  std::unique_lock lock(mu_);
  record.time = world_.now();
  try {
    world_.StartTransfer(id, volume);
  } catch (const Error& e) {
    record.detail = e.what();
    log_.push_back(record);
    return Rejection(e);
  }
  record.accepted = true;
  log_.push_back(record);
  SyncLocked({});
  lock.unlock();
  cv_.notify_all();
  return MakeResponse(codes::kChanged);
}

void PlantRuntime::SyncLocked(const std::vector<Completion>& completions) {
  std::map<std::string, const Delivery*> last_delivery;
  for (const Delivery& d : world_.deliveries()) last_delivery[d.silo] = &d;

  for (const SiloSpec& spec : config_.silos) {
    const SiloState& s = world_.silo(spec.id);
    lwm2m::Device& dev = *units_.at(spec.id).device;
    dev.SetValue(SiloPath(silo_res::kLevel), s.level_pct);
    dev.SetValue(SiloPath(silo_res::kTemperature), s.temp_c);
    dev.SetValue(SiloPath(silo_res::kBatch), s.batch ? FormatBatch(*s.batch) : std::string());
    if (auto it = last_delivery.find(spec.id); it != last_delivery.end()) {
      dev.SetValue(SiloPath(silo_res::kDelivered), FormatBatch(it->second->batch));
    }
    dev.SetValue(SiloPath(silo_res::kState), std::string(UnitStateName(s.state)));
  }
  for (const PipeSpec& spec : config_.pipes) {
    units_.at(spec.id).device->SetValue(
        PipePath(pipe_res::kState), std::string(UnitStateName(world_.pipe(spec.id).state)));
  }
  for (const Completion& c : completions) {
    const Unit& unit = units_.at(c.unit);
    ResourcePath path = unit.is_pipe ? PipePath(pipe_res::kLastCompleted)
                                     : SiloPath(silo_res::kLastCompleted);
    unit.device->SetValue(path, c.action, /*force_notify=*/true);
  }
}

void PlantRuntime::TickLoop() {
  std::unique_lock lock(mu_);
  while (!stop_) {
    if (options_.mode == TimeMode::kVirtual) {
      cv_.wait(lock, [&] { return stop_ || world_.Active(); });
      if (stop_) break;
      SyncLocked(world_.Tick(options_.virtual_dt));
      cv_.notify_all();
      // Give request handlers a chance at the lock between steps.
      lock.unlock();
      std::this_thread::yield();
      lock.lock();
    } else {
      auto tick = options_.real_tick;
      if (cv_.wait_for(lock, tick, [&] { return stop_; })) break;
      SyncLocked(world_.Tick(tick.count() * options_.scale));
      cv_.notify_all();
    }
  }
}

}  // namespace cpms::plant
