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

#include "cpms/lwm2m/device.h"

#include <algorithm>

#include "cpms/common/error.h"

namespace cpms::lwm2m {
namespace {

using coap::CoapMessage;
using coap::MakeResponse;
namespace codes = coap::codes;

constexpr std::string_view kReservedName = "Reserved";

CoapMessage Text(coap::Code code, std::string_view text) {
  return MakeResponse(code, text, coap::content_format::kTextPlain);
}

}  // namespace

Device::Device(std::string name, std::vector<ObjectDef> objects)
    : name_(std::move(name)), objects_(std::move(objects)) {
  for (const auto& def : objects_) ValidateObjectDef(def);
}

void Device::AddInstance(ObjectInstance instance) {
  const ObjectDef* def = FindObject(instance.object_id);
  if (!def) throw Error(ErrorCode::kInvalidConfig, "unknown object " + std::to_string(instance.object_id));
  for (const auto& [rid, value] : instance.values) {
    const ResourceDef* r = def->Find(rid);
    if (!r || r->execute || TypeOf(value) != r->type) {
      throw Error(ErrorCode::kInvalidConfig, def->name + ": bad value for resource " + std::to_string(rid));
    }
  }
  for (int rid : instance.executables) {
    const ResourceDef* r = def->Find(rid);
    if (!r || !r->execute) {
      throw Error(ErrorCode::kInvalidConfig, def->name + ": " + std::to_string(rid) + " is not executable");
    }
  }
  std::lock_guard lock(mu_);
  auto key = std::make_pair(instance.object_id, instance.instance_id);
  if (!instances_.emplace(key, std::move(instance)).second) {
    throw Error(ErrorCode::kInvalidConfig, "duplicate instance");
  }
}

void Device::Attach(coap::Endpoint* endpoint) {
  std::lock_guard lock(mu_);
  endpoint_ = endpoint;
}

const ObjectDef* Device::FindObject(int object_id) const {
  for (const auto& def : objects_) {
    if (def.object_id == object_id) return &def;
  }
  return nullptr;
}

ObjectInstance* Device::FindInstanceLocked(int object_id, int instance_id) {
  auto it = instances_.find({object_id, instance_id});
  return it == instances_.end() ? nullptr : &it->second;
}

const ObjectInstance* Device::FindInstanceLocked(int object_id, int instance_id) const {
  auto it = instances_.find({object_id, instance_id});
  return it == instances_.end() ? nullptr : &it->second;
}

std::vector<ObjectInstance> Device::instances() const {
  std::lock_guard lock(mu_);
  std::vector<ObjectInstance> out;
  for (const auto& [key, instance] : instances_) out.push_back(instance);
  return out;
}

size_t Device::observer_count() const {
  std::lock_guard lock(mu_);
  size_t n = 0;
  for (const auto& [path, list] : observers_) n += list.size();
  return n;
}

std::optional<std::string> Device::ReservationHolder(int object_id, int instance_id) const {
  std::lock_guard lock(mu_);
  auto it = holders_.find({object_id, instance_id});
  if (it == holders_.end()) return std::nullopt;
  return it->second;
}

void Device::SetValue(const ResourcePath& path, Value value, bool force_notify) {
  std::lock_guard lock(mu_);
  ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
  if (!instance || !path.resource_id || !instance->values.contains(*path.resource_id)) {
    throw Error(ErrorCode::kInvalidConfig, name_ + ": no resource " + path.ToString());
  }
  Value& slot = instance->values[*path.resource_id];
  bool changed = FormatValue(slot) != FormatValue(value);
  slot = std::move(value);
  if (changed || force_notify) NotifyLocked(path, slot);
}

std::optional<Value> Device::GetValue(const ResourcePath& path) const {
  std::lock_guard lock(mu_);
  const ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
  if (!instance || !path.resource_id) return std::nullopt;
  auto it = instance->values.find(*path.resource_id);
  if (it == instance->values.end()) return std::nullopt;
  return it->second;
}

void Device::NotifyLocked(const ResourcePath& path, const Value& value) {
  auto it = observers_.find(path);
  if (it == observers_.end() || !endpoint_) return;
  std::string text = FormatValue(value);
  for (auto& observer : it->second) {
    observer.sequence = (observer.sequence + 1) & 0xFFFFFF;
    CoapMessage n = Text(codes::kContent, text);
    n.AddUintOption(coap::option::kObserve, observer.sequence);
    endpoint_->Notify(observer.address, observer.token, std::move(n));
  }
}

CoapMessage Device::Handle(const coap::InboundRequest& request) {
  const CoapMessage& m = request.message;
  auto path = ResourcePath::Parse(m.UriPath());
  if (!path) return Text(codes::kNotFound, "no such path");
  ActionContext context{*path, m.PayloadString(), m.QueryParam("holder")};
  if (m.code == codes::kGet) return Read(*path, request);
  if (!path->resource_id) return Text(codes::kMethodNotAllowed, "instance supports GET only");
  if (m.code == codes::kPut) return Write(context, m);
  if (m.code == codes::kPost) return Execute(context);
  return Text(codes::kMethodNotAllowed, "unsupported method");
}

CoapMessage Device::Read(const ResourcePath& path, const coap::InboundRequest& request) {
  std::lock_guard lock(mu_);
  const ObjectDef* def = FindObject(path.object_id);
  ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
  if (!def || !instance) return Text(codes::kNotFound, "no such instance");

  if (!path.resource_id) {
    // Instance read: "rid=value" lines for readable resources.
    std::string body;
    for (const auto& [rid, value] : instance->values) {
      const ResourceDef* r = def->Find(rid);
      if (r && r->read) body += std::to_string(rid) + "=" + FormatValue(value) + "\n";
    }
    return Text(codes::kContent, body);
  }
  int rid = *path.resource_id;
  if (!instance->Hosts(rid)) return Text(codes::kNotFound, "no such resource");
  const ResourceDef* r = def->Find(rid);
  if (!r->read) return Text(codes::kMethodNotAllowed, "resource is not readable");
  const Value& value = instance->values.at(rid);
  CoapMessage response = Text(codes::kContent, FormatValue(value));

  auto observe = request.message.Observe();
  if (observe) {
    auto& list = observers_[path];
    auto same = [&](const Observer& o) {
      return o.address == request.source && o.token == request.message.token;
    };
    std::erase_if(list, same);
    if (*observe == 0) {
      list.push_back(Observer{request.source, request.message.token, 0});
      response.AddUintOption(coap::option::kObserve, 0);
    }
    if (list.empty()) observers_.erase(path);
  }
  return response;
}

std::optional<CoapMessage> Device::CheckHolder(const ActionContext& context) const {
  auto it = holders_.find({context.path.object_id, context.path.instance_id});
  if (it == holders_.end()) return std::nullopt;
  if (context.holder == it->second) return std::nullopt;
  return Text(codes::kConflict, kReservedByOther);
}

CoapMessage Device::Reserve(const ActionContext& context, const std::string& payload) {
  if (!context.holder || context.holder->empty()) return Text(codes::kBadRequest, "missing holder");
  auto wanted = ParseValue(ValueType::kBoolean, payload);
  if (!wanted) return Text(codes::kBadRequest, "expected true or false");
  std::lock_guard lock(mu_);
  auto key = std::make_pair(context.path.object_id, context.path.instance_id);
  auto it = holders_.find(key);
  if (std::get<bool>(*wanted)) {
    if (it != holders_.end()) return Text(codes::kConflict, "already reserved");
    holders_[key] = *context.holder;
  } else {
    if (it == holders_.end()) return MakeResponse(codes::kChanged);
    if (it->second != *context.holder) return Text(codes::kForbidden, "not the holder");
    holders_.erase(it);
  }
  ObjectInstance* instance = FindInstanceLocked(key.first, key.second);
  Value& slot = instance->values[*context.path.resource_id];
  slot = *wanted;
  NotifyLocked(context.path, slot);
  return MakeResponse(codes::kChanged);
}

CoapMessage Device::Write(const ActionContext& context, const CoapMessage& request) {
  const ResourcePath& path = context.path;
  int rid = *path.resource_id;
  const ResourceDef* r = nullptr;
  {
    std::lock_guard lock(mu_);
    const ObjectDef* def = FindObject(path.object_id);
    const ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
    if (!def || !instance || !instance->Hosts(rid)) return Text(codes::kNotFound, "no such resource");
    r = def->Find(rid);
    if (!r->write) return Text(codes::kMethodNotAllowed, "resource is not writable");
    if (r->name != kReservedName) {
      if (auto refused = CheckHolder(context)) return *refused;
    }
  }
  std::string payload = request.PayloadString();
  if (r->name == kReservedName) return Reserve(context, payload);
  auto value = ParseValue(r->type, payload);
  if (!value) return Text(codes::kBadRequest, "bad value for " + r->name);
  if (write_hook_) {
    if (auto refused = write_hook_(context, *value)) return *refused;
  }
  std::lock_guard lock(mu_);
  if (auto refused = CheckHolder(context)) return *refused;
  ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
  Value& slot = instance->values[rid];
  bool changed = FormatValue(slot) != FormatValue(*value);
  slot = std::move(*value);
  if (changed) NotifyLocked(path, slot);
  return MakeResponse(codes::kChanged);
}

CoapMessage Device::Execute(const ActionContext& context) {
  const ResourcePath& path = context.path;
  {
    std::lock_guard lock(mu_);
    const ObjectDef* def = FindObject(path.object_id);
    const ObjectInstance* instance = FindInstanceLocked(path.object_id, path.instance_id);
    int rid = *path.resource_id;
    if (!def || !instance || !instance->Hosts(rid)) return Text(codes::kNotFound, "no such resource");
    if (!def->Find(rid)->execute) return Text(codes::kMethodNotAllowed, "resource is not executable");
    if (auto refused = CheckHolder(context)) return *refused;
  }
  if (!execute_hook_) return MakeResponse(codes::kChanged);
  return execute_hook_(context);
}

std::unique_ptr<coap::Endpoint> ServeDevice(Device& device, const coap::Address& bind) {
  auto endpoint = coap::Serve(bind, [&device](const coap::InboundRequest& request) {
    return device.Handle(request);
  });
  device.Attach(endpoint.get());
  return endpoint;
}

}  // namespace cpms::lwm2m
