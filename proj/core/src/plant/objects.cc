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

#include "cpms/plant/objects.h"

namespace cpms::plant {

using lwm2m::ObjectDef;
using lwm2m::ValueType;

const ObjectDef& SiloObject() {
  static const ObjectDef def{
      kSiloObject,
      "SmartSilo",
      "lps.silo",
      {
          {silo_res::kLevel, "Level", true, false, false, ValueType::kDouble},
          {silo_res::kTemperature, "Temperature", true, false, false, ValueType::kDouble},
          {silo_res::kState, "State", true, false, false, ValueType::kString},
          {silo_res::kReserved, "Reserved", true, true, false, ValueType::kBoolean},
          {silo_res::kHeatSetpoint, "HeatSetpoint", true, true, false, ValueType::kDouble},
          {silo_res::kMixDuration, "MixDuration", true, true, false, ValueType::kDouble},
          {silo_res::kFill, "Fill", false, false, true, ValueType::kString},
          {silo_res::kEmpty, "Empty", false, false, true, ValueType::kString},
          {silo_res::kHeat, "Heat", false, false, true, ValueType::kString},
          {silo_res::kMix, "Mix", false, false, true, ValueType::kString},
          {silo_res::kLastCompleted, "LastCompleted", true, false, false, ValueType::kString},
          {silo_res::kBatch, "Batch", true, false, false, ValueType::kString},
          {silo_res::kDelivered, "Delivered", true, false, false, ValueType::kString},
          {silo_res::kCapacity, "Capacity", true, false, false, ValueType::kDouble},
          {silo_res::kHeatMax, "HeatMax", true, false, false, ValueType::kDouble},
      }};
  return def;
}

const ObjectDef& PipeObject() {
  static const ObjectDef def{
      kPipeObject,
      "SmartPipe",
      "lps.pipe",
      {
          {pipe_res::kFrom, "From", true, false, false, ValueType::kString},
          {pipe_res::kTo, "To", true, false, false, ValueType::kString},
          {pipe_res::kState, "State", true, false, false, ValueType::kString},
          {pipe_res::kReserved, "Reserved", true, true, false, ValueType::kBoolean},
          {pipe_res::kTransfer, "Transfer", false, false, true, ValueType::kString},
          {pipe_res::kRate, "Rate", true, false, false, ValueType::kDouble},
          {pipe_res::kLastCompleted, "LastCompleted", true, false, false, ValueType::kString},
      }};
  return def;
}

}  // namespace cpms::plant
