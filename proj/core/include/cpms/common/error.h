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

#ifndef CPMS_COMMON_ERROR_H_
#define CPMS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpms {

enum class ErrorCode {
  // transport
  kInvalidMessage,
  kMalformedPacket,
  kTimeout,
  kResetReceived,
  kBindError,
  kInvalidAddress,
  // semantic store
  kSyntaxError,
  kUnknownPrefix,
  kUnboundVariableInFilter,
  kInvalidTerm,
  // directory
  kBadLinkFormat,
  kUnknownEndpoint,
  kBadQuery,
  kDirectoryUnreachable,
  kRejectedRegistration,
  // plant
  kInvalidConfig,
  kBusy,
  kQoSViolation,
  kUnsupportedService,
  kInsufficientVolume,
  kOverflow,
  // orchestration
  kInvalidProcess,
  kNoProvider,
  kUnroutable,
  kQoSUnsatisfiable,
  kStepTimeout,
  kDeviceError,
  kReservationLost,
  kUnreachableEndpoint,
  kCycleBudgetExceeded,
  kInvalidRule,
  // bench
  kLaunchError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(ErrorCode::kSyntaxError, std::to_string(line) + ":" +
                                           std::to_string(column) + ": " +
                                           message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cpms

#endif  // CPMS_COMMON_ERROR_H_
