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

#ifndef CPMS_ORCHESTRATOR_TOPOLOGY_H_
#define CPMS_ORCHESTRATOR_TOPOLOGY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpms/coap/address.h"
#include "cpms/rd/client.h"

namespace cpms::orchestrator {

struct PipeLink {
  std::string id;
  std::string from;
  std::string to;

  friend auto operator<=>(const PipeLink&, const PipeLink&) = default;
};

using Route = std::vector<PipeLink>;

// Directed pipe graph between silos.
class Topology {
 public:
  Topology() = default;
  explicit Topology(std::vector<PipeLink> pipes);

  const std::vector<PipeLink>& pipes() const { return pipes_; }

  // Fewest hops, ties broken by the lexicographically smallest sequence of
  // pipe ids. Empty route when from == to; nullopt when unreachable.
  std::optional<Route> ShortestRoute(const std::string& from, const std::string& to) const;
  // Every simple route (no silo visited twice).
  std::vector<Route> AllRoutes(const std::string& from, const std::string& to) const;

 private:
  std::vector<PipeLink> pipes_;  // sorted by id
};

// What the orchestrator knows about the plant, all of it read from the
// directory.
struct PlantView {
  std::map<std::string, coap::Address> addresses;  // endpoint -> device
  std::set<std::string> silos;
  Topology topology;
  std::map<std::string, std::string> ingredient_sources;  // ingredient -> silo
  std::set<std::string> delivery_points;
  std::set<std::string> empty_providers;
};

// Throws DirectoryUnreachable.
PlantView LoadPlantView(rd::DirectoryClient& directory);

}  // namespace cpms::orchestrator

#endif  // CPMS_ORCHESTRATOR_TOPOLOGY_H_
