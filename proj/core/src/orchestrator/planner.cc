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

#include "cpms/orchestrator/planner.h"

#include <algorithm>
#include <set>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/plant/objects.h"

namespace cpms::orchestrator {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void AppendRoute(std::vector<BoundStep>& steps, const Topology& topology, const std::string& from,
                 const std::string& to) {
  auto route = topology.ShortestRoute(from, to);
  if (!route) throw Error(ErrorCode::kUnroutable, "no pipe route from " + from + " to " + to);
  for (const PipeLink& p : *route) steps.push_back(TransferStep{p.id, p.from, p.to});
}

}  // namespace

std::string_view BindingModeName(BindingMode mode) {
  return mode == BindingMode::kStatic ? "static" : "dynamic";
}

std::string StepName(const BoundStep& step) {
  return std::visit(Overloaded{
                        [](const FillStep& s) { return "Fill@" + s.endpoint; },
                        [](const ApplyStep& s) { return s.request.label + "@" + s.endpoint; },
                        [](const TransferStep& s) { return "Transfer " + s.from + "->" + s.to; },
                        [](const EmptyStep& s) { return "Empty@" + s.endpoint; },
                    },
                    step);
}

std::string StepEndpoint(const BoundStep& step) {
  return std::visit(Overloaded{
                        [](const FillStep& s) { return s.endpoint; },
                        [](const ApplyStep& s) { return s.endpoint; },
                        [](const TransferStep& s) { return s.pipe; },
                        [](const EmptyStep& s) { return s.endpoint; },
                    },
                    step);
}

std::vector<std::string> BoundPlan::StepNames() const {
  std::vector<std::string> names;
  for (const auto& s : steps) names.push_back(StepName(s));
  return names;
}

std::vector<std::string> BoundPlan::Endpoints() const {
  std::set<std::string> all;
  for (const auto& s : steps) all.insert(StepEndpoint(s));
  return {all.begin(), all.end()};
}

std::string BoundPlan::ToString() const {
  std::string out;
  for (const auto& s : steps) {
    out += StepName(s);
    std::visit(Overloaded{
                   [&](const FillStep& f) {
                     out += " ingredient=" + f.ingredient + " volume=" + FormatNumber(f.volume_pct);
                   },
                   [&](const ApplyStep& a) {
                     out += " path=" + a.path;
                     if (!a.request.params.empty()) out += " " + FormatArgs(a.request.params);
                     if (a.deferred) out += " deferred";
                   },
                   [&](const TransferStep& t) { out += " pipe=" + t.pipe; },
                   [](const EmptyStep&) {},
               },
               s);
    out += "\n";
  }
  return out;
}

std::string SiloOperationPath(const std::string& label) {
  namespace r = plant::silo_res;
  int rid = label == "Fill" ? r::kFill
          : label == "Empty" ? r::kEmpty
          : label == "Heat" ? r::kHeat
          : label == "Mix" ? r::kMix
                           : -1;
  if (rid < 0) return {};
  return "/" + std::to_string(plant::kSiloObject) + "/0/" + std::to_string(rid);
}

BoundPlan TransformPimToPsm(const ProcessSpec& pim, rd::DirectoryClient& directory,
                            const PlantView& plant, BindingMode mode) {
  ValidateProcessSpec(pim);
  BoundPlan plan;
  plan.process = pim.name;
  plan.mode = mode;

  // Inputs are filled at their sources and gathered where the first lands.
  std::string location;
  for (const ProcessInput& input : pim.inputs) {
    auto source = plant.ingredient_sources.find(input.ingredient);
    if (source == plant.ingredient_sources.end()) {
      throw Error(ErrorCode::kNoProvider, "no Fill source for " + input.ingredient);
    }
    plan.steps.push_back(FillStep{source->second, input.ingredient, input.volume_pct});
    if (location.empty()) {
      location = source->second;
    } else if (source->second != location) {
      AppendRoute(plan.steps, plant.topology, source->second, location);
    }
  }

  for (const ServiceRequest& request : pim.steps) {
    std::string path = SiloOperationPath(request.label);
    if (path.empty()) throw Error(ErrorCode::kNoProvider, "unknown service " + request.label);
    std::vector<Candidate> candidates = Discover(directory, request);
    if (candidates.empty()) {
      bool any = !directory.LookupSemantic(BuildDiscoveryQuery(request, false)).empty();
      if (any) {
        throw Error(ErrorCode::kQoSUnsatisfiable,
                    "no " + request.label + " provider meets the requested QoS");
      }
      throw Error(ErrorCode::kNoProvider, request.label);
    }
    std::string target;
    if (std::any_of(candidates.begin(), candidates.end(),
                    [&](const Candidate& c) { return c.endpoint == location; })) {
      target = location;
    } else {
      for (const Candidate& c : candidates) {
        if (plant.topology.ShortestRoute(location, c.endpoint)) {
          target = c.endpoint;
          break;
        }
      }
      if (target.empty()) {
        throw Error(ErrorCode::kUnroutable,
                    "no pipe route from " + location + " to any " + request.label + " provider");
      }
      AppendRoute(plan.steps, plant.topology, location, target);
    }
    plan.steps.push_back(ApplyStep{target, path, request, mode == BindingMode::kDynamic});
    location = target;
  }

  std::string delivery = pim.delivery.endpoint;
  if (delivery.empty() && !plant.delivery_points.empty()) {
    // Several delivery points: the one closest to the batch.
    size_t best_hops = SIZE_MAX;
    for (const auto& d : plant.delivery_points) {
      auto route = plant.topology.ShortestRoute(location, d);
      if (route && route->size() < best_hops) {
        best_hops = route->size();
        delivery = d;
      }
    }
  }
  if (delivery.empty()) {
    size_t best_hops = SIZE_MAX;
    for (const auto& e : plant.empty_providers) {
      auto route = plant.topology.ShortestRoute(location, e);
      if (route && route->size() < best_hops) {
        best_hops = route->size();
        delivery = e;
      }
    }
  }
  if (delivery.empty()) throw Error(ErrorCode::kNoProvider, "Empty");
  if (!plant.empty_providers.contains(delivery)) {
    throw Error(ErrorCode::kNoProvider, "delivery silo " + delivery + " offers no Empty");
  }
  AppendRoute(plan.steps, plant.topology, location, delivery);
  plan.steps.push_back(EmptyStep{delivery});
  return plan;
}

}  // namespace cpms::orchestrator
