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

#include "cpms/common/error.h"

namespace cpms {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidMessage: return "InvalidMessage";
    case ErrorCode::kMalformedPacket: return "MalformedPacket";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kResetReceived: return "ResetReceived";
    case ErrorCode::kBindError: return "BindError";
    case ErrorCode::kInvalidAddress: return "InvalidAddress";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownPrefix: return "UnknownPrefix";
    case ErrorCode::kUnboundVariableInFilter: return "UnboundVariableInFilter";
    case ErrorCode::kInvalidTerm: return "InvalidTerm";
    case ErrorCode::kBadLinkFormat: return "BadLinkFormat";
    case ErrorCode::kUnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::kBadQuery: return "BadQuery";
    case ErrorCode::kDirectoryUnreachable: return "DirectoryUnreachable";
    case ErrorCode::kRejectedRegistration: return "RejectedRegistration";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBusy: return "Busy";
    case ErrorCode::kQoSViolation: return "QoSViolation";
    case ErrorCode::kUnsupportedService: return "UnsupportedService";
    case ErrorCode::kInsufficientVolume: return "InsufficientVolume";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kInvalidProcess: return "InvalidProcess";
    case ErrorCode::kNoProvider: return "NoProvider";
    case ErrorCode::kUnroutable: return "Unroutable";
    case ErrorCode::kQoSUnsatisfiable: return "QoSUnsatisfiable";
    case ErrorCode::kStepTimeout: return "StepTimeout";
    case ErrorCode::kDeviceError: return "DeviceError";
    case ErrorCode::kReservationLost: return "ReservationLost";
    case ErrorCode::kUnreachableEndpoint: return "UnreachableEndpoint";
    case ErrorCode::kCycleBudgetExceeded: return "CycleBudgetExceeded";
    case ErrorCode::kInvalidRule: return "InvalidRule";
    case ErrorCode::kLaunchError: return "LaunchError";
  }
  return "Unknown";
}

}  // namespace cpms
