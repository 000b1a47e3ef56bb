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

#include "cpms/orchestrator/topology.h"

#include <algorithm>
#include <deque>
#include <functional>

namespace cpms::orchestrator {

Topology::Topology(std::vector<PipeLink> pipes) : pipes_(std::move(pipes)) {
  std::sort(pipes_.begin(), pipes_.end());
}

std::optional<Route> Topology::ShortestRoute(const std::string& from, const std::string& to) const {
  if (from == to) return Route{};
  // Breadth-first from the source; pipes are scanned in id order, so the
  // first route found to each silo is the lexicographically smallest among
  // the shortest ones.
  std::map<std::string, Route> best{{from, {}}};
  std::deque<std::string> frontier{from};
  while (!frontier.empty()) {
    std::string silo = frontier.front();
    frontier.pop_front();
    for (const PipeLink& p : pipes_) {
      if (p.from != silo || best.contains(p.to)) continue;
      Route r = best[silo];
      r.push_back(p);
      if (p.to == to) return r;
      best.emplace(p.to, std::move(r));
      frontier.push_back(p.to);
    }
  }
  return std::nullopt;
}

std::vector<Route> Topology::AllRoutes(const std::string& from, const std::string& to) const {
  std::vector<Route> routes;
  Route current;
  std::set<std::string> visited{from};
  std::function<void(const std::string&)> walk = [&](const std::string& at) {
    if (at == to) {
      routes.push_back(current);
      return;
    }
    for (const PipeLink& p : pipes_) {
      if (p.from != at || visited.contains(p.to)) continue;
      visited.insert(p.to);
      current.push_back(p);
      walk(p.to);
      current.pop_back();
      visited.erase(p.to);
    }
  };
  walk(from);
  return routes;
}

PlantView LoadPlantView(rd::DirectoryClient& directory) {
  PlantView view;
  for (const auto& link : directory.LookupLinks({})) {
    view.addresses.emplace(link.endpoint, link.source);
    if (link.link.Attribute("rt") == "lps.silo") view.silos.insert(link.endpoint);
  }

  std::vector<PipeLink> pipes;
  for (const auto& m : directory.LookupSemantic(
           "SELECT ?from ?to WHERE { ?t lps:fromSilo ?from; lps:toSilo ?to. }")) {
    pipes.push_back({m.endpoint, m.binding.at("from").value, m.binding.at("to").value});
  }
  view.topology = Topology(std::move(pipes));

  for (const auto& m : directory.LookupSemantic(
           "SELECT ?ingredient WHERE { ?s a lps:Service; rdfs:label 'Fill'@en; "
           "lps:hasIngredient ?ingredient. }")) {
    view.ingredient_sources.emplace(m.binding.at("ingredient").value, m.endpoint);
  }
  for (const auto& m : directory.LookupSemantic(
           "SELECT ?s WHERE { ?s a lps:Service; rdfs:label 'Empty'@en. }")) {
    view.empty_providers.insert(m.endpoint);
  }
  for (const auto& m : directory.LookupSemantic(
           "SELECT ?flag WHERE { ?s rdfs:label 'Empty'@en; lps:deliveryPoint ?flag. }")) {
    if (m.binding.at("flag").value == "true") view.delivery_points.insert(m.endpoint);
  }
  return view;
}

}  // namespace cpms::orchestrator
