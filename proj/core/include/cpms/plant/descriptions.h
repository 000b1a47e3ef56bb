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

#ifndef CPMS_PLANT_DESCRIPTIONS_H_
#define CPMS_PLANT_DESCRIPTIONS_H_

#include <string>

#include "cpms/plant/config.h"
#include "cpms/semantic/graph.h"

namespace cpms::plant {

// "http://<id in lower case>.plant.local/"
std::string LocalNamespace(const std::string& unit_id);

// One service node per offered service, labelled "Fill"/"Empty"/"Heat"/"Mix"
// and tied to shared QoS nodes (allowed material, allowed unit, maximum
// temperature). Fill lists its ingredients, Mix its minimum duration, and
// the plant's delivery silo marks its Empty service as the delivery point.
semantic::Graph DescribeSilo(const SiloSpec& silo, const PlantConfig& plant);

// A "Transfer" service naming both end silos.
semantic::Graph DescribePipe(const PipeSpec& pipe);

}  // namespace cpms::plant

#endif  // CPMS_PLANT_DESCRIPTIONS_H_
