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

#ifndef CPMS_LWM2M_DEVICE_H_
#define CPMS_LWM2M_DEVICE_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/lwm2m/object_model.h"

namespace cpms::lwm2m {

// Context handed to hooks. `holder` is the Uri-Query holder= token, if any.
struct ActionContext {
  ResourcePath path;
  std::string args;  // Execute payload, "key=value" pairs
  std::optional<std::string> holder;
};

// Execute hook: returns the response (2.04 on acceptance). Called without
// the device lock held, so it may call back into SetValue.
using ExecuteHook = std::function<coap::CoapMessage(const ActionContext&)>;
// Write hook: nullopt accepts and stores the value, otherwise the returned
// response is sent and nothing is stored.
using WriteHook =
    std::function<std::optional<coap::CoapMessage>(const ActionContext&, const Value&)>;

// Payload and code used when a reserved unit refuses a foreign holder.
inline constexpr std::string_view kReservedByOther = "reserved";
inline constexpr std::string_view kBusy = "busy";

// One LwM2M client: a set of object instances behind one CoAP endpoint.
// Resource paths are /oid/iid/rid; GET reads, PUT writes, POST executes,
// GET with Observe=0/1 registers/deregisters an observer.
//
// When an object defines a resource named "Reserved", PUT to it is a
// compare-and-set guarded by a holder token (?holder=...): true on a
// reserved instance is 4.09, false from a non-holder is 4.03. While reserved,
// Write and Execute from any other holder get 4.09 "reserved".
class Device {
 public:
  Device(std::string name, std::vector<ObjectDef> objects);

  // Throws InvalidConfig for unknown objects or duplicate instances.
  void AddInstance(ObjectInstance instance);
  void SetExecuteHook(ExecuteHook hook) { execute_hook_ = std::move(hook); }
  void SetWriteHook(WriteHook hook) { write_hook_ = std::move(hook); }

  // Notifications are sent through this endpoint. Set before serving.
  void Attach(coap::Endpoint* endpoint);

  coap::CoapMessage Handle(const coap::InboundRequest& request);

  // Local update; observers are notified when the text form changes (or
  // always with force_notify). Throws InvalidConfig for unhosted paths.
  void SetValue(const ResourcePath& path, Value value, bool force_notify = false);
  std::optional<Value> GetValue(const ResourcePath& path) const;

  // Holder token of the instance's reservation, if reserved.
  std::optional<std::string> ReservationHolder(int object_id, int instance_id) const;

  const std::string& name() const { return name_; }
  const std::vector<ObjectDef>& objects() const { return objects_; }
  std::vector<ObjectInstance> instances() const;
  const ObjectDef* FindObject(int object_id) const;
  size_t observer_count() const;

 private:
  struct Observer {
    coap::Address address;
    coap::Bytes token;
    uint32_t sequence = 0;
  };

  coap::CoapMessage Read(const ResourcePath& path, const coap::InboundRequest& request);
  coap::CoapMessage Write(const ActionContext& context, const coap::CoapMessage& request);
  coap::CoapMessage Execute(const ActionContext& context);
  coap::CoapMessage Reserve(const ActionContext& context, const std::string& payload);
  // Returns a 4.09 response when the instance is reserved by someone else.
  std::optional<coap::CoapMessage> CheckHolder(const ActionContext& context) const;
  // Callers hold mu_.
  void NotifyLocked(const ResourcePath& path, const Value& value);
  ObjectInstance* FindInstanceLocked(int object_id, int instance_id);
  const ObjectInstance* FindInstanceLocked(int object_id, int instance_id) const;

  const std::string name_;
  const std::vector<ObjectDef> objects_;
  ExecuteHook execute_hook_;
  WriteHook write_hook_;
  coap::Endpoint* endpoint_ = nullptr;

  mutable std::mutex mu_;
  std::map<std::pair<int, int>, ObjectInstance> instances_;
  std::map<std::pair<int, int>, std::string> holders_;
  std::map<ResourcePath, std::vector<Observer>> observers_;
};

// Binds an endpoint whose handler is `device`, and attaches it.
std::unique_ptr<coap::Endpoint> ServeDevice(Device& device, const coap::Address& bind);

}  // namespace cpms::lwm2m

#endif  // CPMS_LWM2M_DEVICE_H_
