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

#ifndef CPMS_PLANT_OBJECTS_H_
#define CPMS_PLANT_OBJECTS_H_

#include "cpms/lwm2m/object_model.h"

namespace cpms::plant {

// Object ids from the experimental range.
inline constexpr int kSiloObject = 26241;
inline constexpr int kPipeObject = 26242;

namespace silo_res {
inline constexpr int kLevel = 0;
inline constexpr int kTemperature = 1;
inline constexpr int kState = 2;
inline constexpr int kReserved = 3;
inline constexpr int kHeatSetpoint = 4;
inline constexpr int kMixDuration = 5;
inline constexpr int kFill = 6;
inline constexpr int kEmpty = 7;
inline constexpr int kHeat = 8;
inline constexpr int kMix = 9;
inline constexpr int kLastCompleted = 10;
inline constexpr int kBatch = 11;
inline constexpr int kDelivered = 12;
inline constexpr int kCapacity = 13;
inline constexpr int kHeatMax = 14;
}  // namespace silo_res

namespace pipe_res {
inline constexpr int kFrom = 0;
inline constexpr int kTo = 1;
inline constexpr int kState = 2;
inline constexpr int kReserved = 3;
inline constexpr int kTransfer = 4;
inline constexpr int kRate = 5;
inline constexpr int kLastCompleted = 6;
}  // namespace pipe_res

const lwm2m::ObjectDef& SiloObject();
const lwm2m::ObjectDef& PipeObject();

}  // namespace cpms::plant

#endif  // CPMS_PLANT_OBJECTS_H_
