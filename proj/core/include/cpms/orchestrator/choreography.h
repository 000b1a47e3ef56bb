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

#ifndef CPMS_ORCHESTRATOR_CHOREOGRAPHY_H_
#define CPMS_ORCHESTRATOR_CHOREOGRAPHY_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/common/error.h"
#include "cpms/orchestrator/topology.h"

namespace cpms::orchestrator {

struct Trigger {
  std::string endpoint;
  std::string path;   // observed resource, "/26241/0/10"
  std::string value;  // payload that fires the rule

  friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct RuleAction {
  std::string endpoint;
  std::string path;  // Execute resource
  std::string args;

  friend bool operator==(const RuleAction&, const RuleAction&) = default;
};

struct ChoreographyRule {
  Trigger trigger;
  RuleAction action;
};

struct Choreography {
  std::vector<ChoreographyRule> rules;
  std::optional<RuleAction> kick;   // initial Execute
  std::optional<Trigger> until;     // stops the run when seen
};

// Throws InvalidRule for empty fields or a rule whose action is its own
// trigger (same endpoint and path).
void ValidateRules(const std::vector<ChoreographyRule>& rules);

// {"rules": [{"trigger": {endpoint, path, value}, "action": {endpoint,
// path, args}}], "kick": {...}, "until": {...}}. A bare JSON list is taken
// as the rules alone.
Choreography ParseChoreography(std::string_view json);
Choreography LoadChoreography(const std::string& path);

struct ChoreographyEvent {
  double ts = 0;
  std::string cause;  // "kick" or "rule <index>"
  std::string endpoint;
  std::string path;
  std::string outcome;  // "ok" or the refusal
};

struct ChoreographyOptions {
  // Firings allowed before the run aborts with CycleBudgetExceeded.
  int budget = 1000;
  // Stop once no trigger has matched for this long.
  std::chrono::duration<double> quiescence{1.0};
  coap::RequestOptions request;
};

struct ChoreographyResult {
  std::vector<ChoreographyEvent> events;
  int firings = 0;
  bool reached_until = false;
  std::optional<ErrorCode> error;
  std::string error_message;

  // `ts cause endpoint path outcome`, tab separated.
  std::string ToString(bool with_timestamps = true) const;
};

// Installs one observation per distinct trigger resource, performs the
// kick, then fires rule actions as notifications match. Rules sharing a
// trigger fire in rule order. Throws UnreachableEndpoint when a trigger
// cannot be observed.
ChoreographyResult RunChoreography(const Choreography& choreography, coap::Endpoint& client,
                                   const PlantView& plant,
                                   const ChoreographyOptions& options = {});

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_CHOREOGRAPHY_H_
