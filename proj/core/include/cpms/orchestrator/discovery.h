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

#ifndef CPMS_ORCHESTRATOR_DISCOVERY_H_
#define CPMS_ORCHESTRATOR_DISCOVERY_H_

#include <optional>
#include <string>
#include <vector>

#include "cpms/orchestrator/process.h"
#include "cpms/rd/client.h"

namespace cpms::orchestrator {

struct Candidate {
  std::string endpoint;
  semantic::Term service;
  // Published capability: maximum temperature for Heat, 0 otherwise.
  double capability = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// The query text sent to the directory. For Heat this is the
// label + material + (unit, maximum temperature >= threshold) pattern,
// where the threshold is min_capability or, failing that, the setpoint.
// `with_qos` = false keeps only the type and label patterns.
std::string BuildDiscoveryQuery(const ServiceRequest& request, bool with_qos = true);

// Providers satisfying the request, best first: capability descending,
// then endpoint name. Candidates that cannot honour the request's own
// parameters (a setpoint above their maximum, a mix shorter than their
// minimum) are dropped. Throws DirectoryUnreachable.
std::vector<Candidate> Discover(rd::DirectoryClient& directory, const ServiceRequest& request);

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_DISCOVERY_H_
