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

#ifndef CPMS_LWM2M_DESCRIPTOR_H_
#define CPMS_LWM2M_DESCRIPTOR_H_

#include <map>
#include <string>
#include <vector>

#include "cpms/lwm2m/object_model.h"
#include "cpms/rd/link_format.h"
#include "cpms/semantic/graph.h"

namespace cpms::lwm2m {

enum class CpmsKind : uint8_t { kPrimitive, kComposite };

// A provided interface: an object path and the service label it offers.
struct ProvidedInterface {
  std::string path;   // "/26241/0/8"
  std::string label;  // "Heat"
};

// A required interface of a composite: label plus free-form QoS terms.
struct RequiredInterface {
  std::string label;
  std::map<std::string, std::string> qos;
};

struct CpmsDescriptor {
  std::string endpoint_name;
  CpmsKind kind = CpmsKind::kPrimitive;
  std::vector<ProvidedInterface> provided_if;
  std::vector<RequiredInterface> required_if;
  semantic::Graph description;
  std::vector<ObjectInstance> hosted_objects;
};

// Primitive: at least one hosted object exposes an Execute resource.
// Composite: at least one required interface. Throws InvalidConfig.
void Validate(const CpmsDescriptor& descriptor, const std::vector<ObjectDef>& objects);

// One link per hosted instance, `</oid/iid>;rt="<object rt>"`.
std::vector<rd::LinkEntry> RegistrationLinks(const CpmsDescriptor& descriptor,
                                             const std::vector<ObjectDef>& objects);

}  // namespace cpms::lwm2m

#endif  // CPMS_LWM2M_DESCRIPTOR_H_
