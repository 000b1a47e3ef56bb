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

#include "cpms/lwm2m/descriptor.h"

#include "cpms/common/error.h"

namespace cpms::lwm2m {
namespace {

const ObjectDef* FindDef(const std::vector<ObjectDef>& objects, int object_id) {
  for (const auto& def : objects) {
    if (def.object_id == object_id) return &def;
  }
  return nullptr;
}

}  // namespace

void Validate(const CpmsDescriptor& descriptor, const std::vector<ObjectDef>& objects) {
  if (descriptor.endpoint_name.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "descriptor without endpoint name");
  }
  if (descriptor.kind == CpmsKind::kComposite) {
    if (descriptor.required_if.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  descriptor.endpoint_name + ": composite requires at least one service");
    }
    return;
  }
  for (const auto& instance : descriptor.hosted_objects) {
    const ObjectDef* def = FindDef(objects, instance.object_id);
    if (!def) {
      throw Error(ErrorCode::kInvalidConfig, "unknown object " + std::to_string(instance.object_id));
    }
    for (int rid : instance.executables) {
      const ResourceDef* r = def->Find(rid);
      if (r && r->execute) return;
    }
  }
  throw Error(ErrorCode::kInvalidConfig,
              descriptor.endpoint_name + ": primitive hosts no executable resource");
}

std::vector<rd::LinkEntry> RegistrationLinks(const CpmsDescriptor& descriptor,
                                             const std::vector<ObjectDef>& objects) {
  std::vector<rd::LinkEntry> links;
  for (const auto& instance : descriptor.hosted_objects) {
    rd::LinkEntry link;
    link.uri_reference = "/" + std::to_string(instance.object_id) + "/" +
                         std::to_string(instance.instance_id);
    const ObjectDef* def = FindDef(objects, instance.object_id);
    if (def && !def->resource_type.empty()) link.Set("rt", def->resource_type);
    links.push_back(std::move(link));
  }
  return links;
}

}  // namespace cpms::lwm2m
