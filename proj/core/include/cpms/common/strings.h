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

#ifndef CPMS_COMMON_STRINGS_H_
#define CPMS_COMMON_STRINGS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpms {

std::vector<std::string> Split(std::string_view text, char separator);
std::string_view Trim(std::string_view text);

// Shortest round-trippable decimal form ("70", "2.5", "1e-07").
std::string FormatNumber(double value);

std::optional<double> ParseDouble(std::string_view text);
std::optional<long long> ParseInteger(std::string_view text);

// `key=value` pairs separated by '&', ';' or whitespace. Later keys win.
std::map<std::string, std::string> ParseArgs(std::string_view text);
std::string FormatArgs(const std::map<std::string, std::string>& args);

}  // namespace cpms

#endif  // CPMS_COMMON_STRINGS_H_
