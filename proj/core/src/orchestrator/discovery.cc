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

#include "cpms/orchestrator/discovery.h"

#include <algorithm>
#include <set>

#include "cpms/common/strings.h"
#include "cpms/semantic/term.h"

namespace cpms::orchestrator {
namespace {

std::string Iri(const semantic::Term& t) { return "<" + t.value + ">"; }

}  // namespace

std::string BuildDiscoveryQuery(const ServiceRequest& request, bool with_qos) {
  const bool heat = request.label == "Heat";
  const bool mix = request.label == "Mix";
  std::string q;
  q += "SELECT ?service";
  if (with_qos && heat) q += " ?value";
  if (with_qos && mix) q += " ?min";
  q += "\nWHERE {\n";
  q += "  ?service a lps:Service;\n";
  q += "           rdfs:label '" + request.label + "'@en";
  if (with_qos) {
    q += ";\n           lps:QoS/lps:hasMaterialType " + Iri(request.qos.material);
    if (heat) {
      double threshold = request.qos.min_capability
                             ? *request.qos.min_capability
                             : request.NumericParam("setpoint").value_or(0);
      q += ";\n           lps:QoS ?maxTemp.\n";
      q += "  ?maxTemp a lps:MaxTemperature;\n";
      q += "           lps:hasUnit/lps:hasUnitType " + Iri(request.qos.unit) + ";\n";
      q += "           lps:hasValue ?value\n";
      q += "           FILTER(?value>=" + FormatNumber(threshold) + ")";
    } else if (mix) {
      q += ";\n           lps:minDuration ?min";
    }
  }
  q += ".\n}\n";
  return q;
}

std::vector<Candidate> Discover(rd::DirectoryClient& directory, const ServiceRequest& request) {
  auto matches = directory.LookupSemantic(BuildDiscoveryQuery(request));
  std::vector<Candidate> out;
  std::set<std::string> seen;
  auto setpoint = request.NumericParam("setpoint");
  auto duration = request.NumericParam("duration");
  for (const auto& m : matches) {
    Candidate c{m.endpoint, m.binding.at("service"), 0};
    if (auto it = m.binding.find("value"); it != m.binding.end()) {
      c.capability = it->second.NumericValue().value_or(0);
      if (setpoint && *setpoint > c.capability) continue;
    }
    if (auto it = m.binding.find("min"); it != m.binding.end()) {
      auto min = it->second.NumericValue();
      if (duration && min && *duration < *min) continue;
    }
    // One candidate per endpoint: keep its best service.
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.capability != b.capability) return a.capability > b.capability;
    if (a.endpoint != b.endpoint) return a.endpoint < b.endpoint;
    return a.service < b.service;
  });
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](const Candidate& c) { return !seen.insert(c.endpoint).second; }),
            out.end());
  return out;
}

}  // namespace cpms::orchestrator
