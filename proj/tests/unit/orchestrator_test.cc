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

#include <algorithm>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "cpms/common/clock.h"
#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/orchestrator/choreography.h"
#include "cpms/orchestrator/discovery.h"
#include "cpms/orchestrator/executor.h"
#include "cpms/orchestrator/planner.h"
#include "cpms/orchestrator/process.h"
#include "cpms/orchestrator/topology.h"
#include "cpms/plant/runtime.h"
#include "cpms/rd/server.h"
#include "cpms/semantic/query.h"
#include "fixture_util.h"
#include "plant_directory.h"

namespace cpms::orchestrator {
namespace {

namespace codes = coap::codes;
using semantic::Term;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidMessage;
}

plant::PlantConfig Plant(const std::string& file) {
  return plant::LoadPlantConfig(testing::DataPath("plants/" + file));
}

ProcessSpec Process(const std::string& file) {
  return LoadProcessSpec(testing::DataPath("processes/" + file));
}

ServiceRequest HeatRequest(double setpoint, std::optional<double> min_capability = {}) {
  ServiceRequest r;
  r.label = "Heat";
  r.qos = {DefaultMaterial(), DefaultUnit(), min_capability};
  r.params["setpoint"] = FormatNumber(setpoint);
  return r;
}

// --- process specs -------------------------------------------------------

TEST(ProcessSpecTest, ShippedRecipes) {
  ProcessSpec a = Process("lgpA.json");
  EXPECT_EQ(a.name, "lgpA");
  ASSERT_EQ(a.inputs.size(), 1u);
  EXPECT_EQ(a.inputs[0].ingredient, "liqueur-base");
  EXPECT_EQ(a.inputs[0].volume_pct, 50);
  ASSERT_EQ(a.steps.size(), 2u);
  EXPECT_EQ(a.steps[0].label, "Heat");
  EXPECT_EQ(a.steps[0].params.at("setpoint"), "50");
  EXPECT_EQ(a.steps[1].params.at("duration"), "30");
  EXPECT_EQ(a.steps[0].qos.material, DefaultMaterial());

  ProcessSpec b = Process("lgpB.json");
  EXPECT_EQ(b.steps[0].qos.min_capability, 50);
  EXPECT_EQ(b.steps[0].params.at("setpoint"), "60");
}

TEST(ProcessSpecTest, PlantSpecificStepsAreRejected) {
  for (const char* label : {"Fill", "Empty", "Transfer"}) {
    std::string json = std::string(R"({"name":"p","inputs":[{"ingredient":"x","volume":10}],)") +
                       R"("steps":[{"label":")" + label + R"("}]})";
    EXPECT_EQ(CodeOf([&] { ParseProcessSpec(json); }), ErrorCode::kInvalidProcess) << label;
  }
  EXPECT_EQ(CodeOf([&] {
              ParseProcessSpec(R"({"name":"p","inputs":[{"ingredient":"x","volume":10}],
                                   "steps":[{"label":"Heat"}]})");
            }),
            ErrorCode::kInvalidProcess);
  EXPECT_EQ(CodeOf([&] { ParseProcessSpec(R"({"name":"p","inputs":[],"steps":[]})"); }),
            ErrorCode::kInvalidProcess);
  EXPECT_EQ(CodeOf([&] { ParseProcessSpec("{"); }), ErrorCode::kInvalidProcess);
}

// --- discovery ----------------------------------------------------------

TEST(DiscoveryTest, HeatQueryMatchesTheReferenceQuery) {
  semantic::Query built = semantic::ParseQuery(BuildDiscoveryQuery(HeatRequest(60, 50)));
  semantic::Query reference = semantic::ParseQuery(testing::Fixture("heat_discovery.rq"));
  EXPECT_EQ(built.patterns, reference.patterns);
  EXPECT_EQ(built.filters, reference.filters);
}

class DiscoveryDirectoryTest : public ::testing::Test {
 protected:
  ManualClock clock_;
  rd::Directory directory_{clock_};
  rd::LocalDirectoryClient client_{directory_};

  void AddHeater(const std::string& id, double max) {
    plant::PlantConfig c;
    plant::SiloSpec s;
    s.id = id;
    s.services = {plant::Service::kHeat};
    s.heat_max_c = max;
    c.silos = {s};
    testing::RegisterOffline(directory_, c);
  }
};

TEST_F(DiscoveryDirectoryTest, ReferenceSiloIsFound) {
  directory_.Register("smartSilo4", 86400, coap::Address(0x7f000001, 5683), {});
  directory_.PutDescription("smartSilo4", testing::Fixture("heat_service.ttl"));
  auto found = Discover(client_, HeatRequest(50, 50));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].endpoint, "smartSilo4");
  EXPECT_EQ(found[0].service, Term::Iri("http://ss4.ece.upatras.gr/heat"));
  EXPECT_EQ(found[0].capability, 70);
}

TEST_F(DiscoveryDirectoryTest, RankedByCapabilityThenName) {
  AddHeater("B", 60);
  AddHeater("C", 70);
  AddHeater("A", 60);
  auto found = Discover(client_, HeatRequest(50));
  ASSERT_EQ(found.size(), 3u);
  EXPECT_EQ(found[0].endpoint, "C");
  EXPECT_EQ(found[1].endpoint, "A");
  EXPECT_EQ(found[2].endpoint, "B");
  // A setpoint above a provider's maximum drops it even under a lower
  // min_capability.
  found = Discover(client_, HeatRequest(65, 50));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].endpoint, "C");
}

TEST_F(DiscoveryDirectoryTest, NoProviderIsEmpty) {
  EXPECT_TRUE(Discover(client_, HeatRequest(50)).empty());
  AddHeater("A", 40);
  EXPECT_TRUE(Discover(client_, HeatRequest(50)).empty());
}

// --- routing --------------------------------------------------------------

TEST(TopologyTest, ShortestRouteBreaksTiesByPipeId) {
  Topology t({{"P3", "A", "B"}, {"P1", "A", "C"}, {"P2", "B", "D"}, {"P0", "C", "D"},
              {"P4", "A", "D"}, {"P5", "D", "E"}});
  auto r = t.ShortestRoute("A", "E");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->size(), 2u);
  EXPECT_EQ((*r)[0].id, "P4");
  EXPECT_EQ(t.ShortestRoute("A", "A")->size(), 0u);
  EXPECT_FALSE(t.ShortestRoute("E", "A"));

  Topology diamond({{"P3", "A", "B"}, {"P1", "A", "C"}, {"P2", "B", "D"}, {"P0", "C", "D"}});
  r = diamond.ShortestRoute("A", "D");
  ASSERT_TRUE(r);
  EXPECT_EQ((*r)[0].id, "P1");
  EXPECT_EQ((*r)[1].id, "P0");
}

std::vector<std::string> Ids(const Route& r) {
  std::vector<std::string> ids;
  for (const auto& p : r) ids.push_back(p.id);
  return ids;
}

// Brute force over every simple route: the chosen one is valid, has the
// minimum hop count, and is the smallest id sequence among those.
TEST(TopologyPropertyTest, RouteIsMinimalAgainstEnumeration) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int silos = std::uniform_int_distribution<int>(2, 6)(rng);
    int pipes = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<PipeLink> links;
    for (int i = 0; i < pipes; ++i) {
      int a = std::uniform_int_distribution<int>(0, silos - 1)(rng);
      int b = std::uniform_int_distribution<int>(0, silos - 2)(rng);
      if (b >= a) ++b;
      links.push_back({"P" + std::to_string(i), "S" + std::to_string(a), "S" + std::to_string(b)});
    }
    Topology t(links);
    for (int a = 0; a < silos; ++a) {
      for (int b = 0; b < silos; ++b) {
        if (a == b) continue;
        std::string from = "S" + std::to_string(a), to = "S" + std::to_string(b);
        auto all = t.AllRoutes(from, to);
        auto chosen = t.ShortestRoute(from, to);
        ASSERT_EQ(chosen.has_value(), !all.empty());
        if (!chosen) continue;
        std::string at = from;
        for (const auto& p : *chosen) {
          ASSERT_EQ(p.from, at);
          at = p.to;
        }
        ASSERT_EQ(at, to);
        size_t min_hops = SIZE_MAX;
        for (const auto& r : all) min_hops = std::min(min_hops, r.size());
        ASSERT_EQ(chosen->size(), min_hops);
        std::vector<std::string> best;
        for (const auto& r : all) {
          if (r.size() == min_hops && (best.empty() || Ids(r) < best)) best = Ids(r);
        }
        ASSERT_EQ(Ids(*chosen), best);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500);
}

// --- planning -----------------------------------------------------------

class PlannerTest : public ::testing::Test {
 protected:
  BoundPlan PlanFor(const std::string& plant_file, const ProcessSpec& pim,
                    BindingMode mode = BindingMode::kStatic) {
    testing::RegisterOffline(directory_, Plant(plant_file));
    PlantView view = LoadPlantView(client_);
    return TransformPimToPsm(pim, client_, view, mode);
  }

  ManualClock clock_;
  rd::Directory directory_{clock_};
  rd::LocalDirectoryClient client_{directory_};
};

TEST_F(PlannerTest, TwoSiloPlantInsertsTransfers) {
  BoundPlan plan = PlanFor("two_silo.json", Process("lgpA.json"));
  std::vector<std::string> expected = {"Fill@S1", "Transfer S1->S2", "Heat@S2",
                                       "Transfer S2->S1", "Mix@S1", "Empty@S1"};
  EXPECT_EQ(plan.StepNames(), expected);
  EXPECT_EQ(std::get<TransferStep>(plan.steps[1]).pipe, "P12");
  EXPECT_EQ(std::get<ApplyStep>(plan.steps[2]).path, "/26241/0/8");
  EXPECT_EQ(plan.Endpoints(), (std::vector<std::string>{"P12", "P21", "S1", "S2"}));
}

TEST_F(PlannerTest, ColocatedPlantNeedsNoTransfer) {
  BoundPlan plan = PlanFor("colocated.json", Process("lgpA.json"));
  EXPECT_EQ(plan.StepNames(),
            (std::vector<std::string>{"Fill@S1", "Heat@S1", "Mix@S1", "Empty@S1"}));
}

TEST_F(PlannerTest, PrefersTheStrongestReachableHeater) {
  BoundPlan plan = PlanFor("liqueur_plant.json", Process("lgpB.json"));
  EXPECT_EQ(plan.StepNames(),
            (std::vector<std::string>{"Fill@S1", "Transfer S1->smartSilo4", "Heat@smartSilo4",
                                      "Transfer smartSilo4->S1", "Mix@S1", "Empty@S1"}));
}

TEST_F(PlannerTest, DynamicPlansDeferTheServices) {
  BoundPlan plan = PlanFor("two_silo.json", Process("lgpA.json"), BindingMode::kDynamic);
  EXPECT_EQ(plan.StepNames().size(), 6u);
  EXPECT_TRUE(std::get<ApplyStep>(plan.steps[2]).deferred);
}

TEST_F(PlannerTest, Failures) {
  ProcessSpec pim = Process("lgpA.json");
  pim.steps[0].qos.min_capability = 90;
  EXPECT_EQ(CodeOf([&] { PlanFor("two_silo.json", pim); }), ErrorCode::kQoSUnsatisfiable);

  pim = Process("lgpA.json");
  pim.steps[0].label = "Distill";
  EXPECT_EQ(CodeOf([&] { PlanFor("two_silo.json", pim); }), ErrorCode::kNoProvider);
}

TEST_F(PlannerTest, UnreachableProvider) {
  // Heater exists but no pipe leads there.
  plant::PlantConfig c = Plant("two_silo.json");
  c.pipes.clear();
  testing::RegisterOffline(directory_, c);
  PlantView view = LoadPlantView(client_);
  EXPECT_EQ(CodeOf([&] { TransformPimToPsm(Process("lgpA.json"), client_, view, BindingMode::kStatic); }),
            ErrorCode::kUnroutable);
}

TEST_F(PlannerTest, ViewReadsTheTopologyFromDescriptions) {
  testing::RegisterOffline(directory_, Plant("two_silo.json"));
  PlantView view = LoadPlantView(client_);
  EXPECT_EQ(view.silos, (std::set<std::string>{"S1", "S2"}));
  EXPECT_EQ(view.topology.pipes().size(), 2u);
  EXPECT_EQ(view.ingredient_sources.at("liqueur-base"), "S1");
  EXPECT_EQ(view.delivery_points, (std::set<std::string>{"S1"}));
  EXPECT_EQ(view.addresses.size(), 4u);
}

// --- execution against a running plant -------------------------------------

class ExecutionTest : public ::testing::Test {
 protected:
  void StartPlant(const std::string& file, plant::RuntimeOptions options = {}) {
    server_ = rd::RdServer::Start(coap::Address::Parse("127.0.0.1:0"), clock_);
    options.directory = server_->address();
    options.registration.auto_refresh = false;
    plant_ = plant::PlantRuntime::Start(Plant(file), options);
    client_ = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
    directory_ = std::make_unique<rd::CoapDirectoryClient>(*client_, server_->address());
    view_ = LoadPlantView(*directory_);
  }

  BoundPlan PlanLgpA(BindingMode mode) {
    return TransformPimToPsm(Process("lgpA.json"), *directory_, view_, mode);
  }

  std::string Reserved(const std::string& unit) {
    auto& dev = plant_->device(unit);
    int object = dev.objects()[0].object_id;
    return lwm2m::FormatValue(*dev.GetValue({object, 0, plant::silo_res::kReserved}));
  }

  SteadyClock clock_;
  std::unique_ptr<rd::RdServer> server_;
  std::unique_ptr<plant::PlantRuntime> plant_;
  std::unique_ptr<coap::Endpoint> client_;
  std::unique_ptr<rd::CoapDirectoryClient> directory_;
  PlantView view_;
};

TEST_F(ExecutionTest, LgpARunsToCompletion) {
  StartPlant("two_silo.json");
  ProcessTrace trace = ExecutePlan(PlanLgpA(BindingMode::kStatic), *client_, *directory_, view_);
  ASSERT_TRUE(trace.ok()) << trace.error_message << "\n" << trace.ToString();
  ASSERT_EQ(trace.steps.size(), 6u);
  for (const auto& s : trace.steps) EXPECT_EQ(s.outcome, "ok") << s.step;
  for (size_t i = 1; i < trace.steps.size(); ++i) {
    EXPECT_LE(trace.steps[i - 1].end_ts, trace.steps[i].start_ts);
  }
  ASSERT_TRUE(trace.final_batch);
  EXPECT_EQ(trace.final_batch->history, (std::vector<std::string>{"Fill", "Heat", "Mix"}));
  EXPECT_NEAR(trace.final_batch->temp_c, 50, 1e-6);
  EXPECT_NEAR(trace.final_batch->Liters(), 50, 1e-9);
  for (const auto& unit : plant_->units()) EXPECT_EQ(Reserved(unit), "false") << unit;
}

TEST_F(ExecutionTest, StaticAndDynamicTracesAgree) {
  StartPlant("two_silo.json");
  ProcessTrace a = ExecutePlan(PlanLgpA(BindingMode::kStatic), *client_, *directory_, view_);
  ProcessTrace b = ExecutePlan(PlanLgpA(BindingMode::kDynamic), *client_, *directory_, view_);
  ASSERT_TRUE(a.ok() && b.ok()) << a.error_message << b.error_message;
  EXPECT_EQ(a.ToString(false), b.ToString(false));
}

TEST_F(ExecutionTest, ReservationIsCompareAndSet) {
  StartPlant("two_silo.json");
  Reserve(*client_, view_, "S2", "one");
  EXPECT_EQ(CodeOf([&] { Reserve(*client_, view_, "S2", "two"); }), ErrorCode::kBusy);
  EXPECT_EQ(CodeOf([&] { Release(*client_, view_, "S2", "two"); }), ErrorCode::kDeviceError);
  Release(*client_, view_, "S2", "one");
  Reserve(*client_, view_, "S2", "two");
  Release(*client_, view_, "S2", "two");

  std::atomic<int> winners{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      auto ep = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
      try {
        Reserve(*ep, view_, "S1", "t" + std::to_string(i));
        ++winners;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kBusy);
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(winners.load(), 1);
}

TEST_F(ExecutionTest, ContentionEndsTheRunAndReleases) {
  StartPlant("two_silo.json");
  Reserve(*client_, view_, "S2", "intruder");
  ExecutionOptions options;
  options.reserve_attempts = 2;
  options.reserve_backoff = std::chrono::milliseconds(10);

  ProcessTrace dynamic = ExecutePlan(PlanLgpA(BindingMode::kDynamic), *client_, *directory_,
                                     view_, options);
  ASSERT_FALSE(dynamic.ok());
  EXPECT_EQ(*dynamic.error, ErrorCode::kBusy);
  ASSERT_EQ(dynamic.steps.size(), 3u);
  EXPECT_EQ(dynamic.steps[0].outcome, "ok");
  EXPECT_EQ(dynamic.steps[1].step, "Reserve");
  EXPECT_EQ(dynamic.steps[2].outcome, "error(Busy)");

  ProcessTrace fixed = ExecutePlan(PlanLgpA(BindingMode::kStatic), *client_, *directory_, view_,
                                   options);
  ASSERT_FALSE(fixed.ok());
  ASSERT_EQ(fixed.steps.size(), 1u);
  EXPECT_EQ(fixed.steps[0].endpoint, "S2");
  for (const auto& unit : {"S1", "P12", "P21"}) EXPECT_EQ(Reserved(unit), "false") << unit;
  EXPECT_EQ(Reserved("S2"), "true");
}

TEST_F(ExecutionTest, DeviceRefusalMidPlan) {
  StartPlant("two_silo.json");
  // S2 is busy heating an unrelated batch when the plan reaches Transfer.
  plant::PlantConfig c = Plant("two_silo.json");
  coap::Address s1 = plant_->AddressOf("S1");
  auto put = [&](const coap::Address& to, const std::string& path, const std::string& args) {
    return client_->Request(to, coap::MakeRequest(codes::kPost, path, args));
  };
  ASSERT_EQ(put(s1, "/26241/0/6", "ingredient=liqueur-base&volume=10").code, codes::kChanged);
  ASSERT_TRUE(plant_->WaitIdle(std::chrono::seconds(5)));
  ASSERT_EQ(put(plant_->AddressOf("P12"), "/26242/0/4", "volume=all").code, codes::kChanged);
  ASSERT_TRUE(plant_->WaitIdle(std::chrono::seconds(5)));

  // 10 % already sits in S2; a 95 % batch cannot follow it.
  ProcessSpec pim = Process("lgpA.json");
  pim.inputs[0].volume_pct = 95;
  BoundPlan plan = TransformPimToPsm(pim, *directory_, view_, BindingMode::kStatic);
  ProcessTrace trace = ExecutePlan(plan, *client_, *directory_, view_);
  ASSERT_FALSE(trace.ok());
  EXPECT_EQ(*trace.error, ErrorCode::kDeviceError);
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[1].outcome, "error(DeviceError)");
  for (const auto& unit : plant_->units()) EXPECT_EQ(Reserved(unit), "false") << unit;
}

TEST_F(ExecutionTest, StepTimeoutReleases) {
  plant::RuntimeOptions options;
  options.mode = plant::TimeMode::kReal;
  StartPlant("two_silo.json", options);
  ExecutionOptions exec;
  exec.step_timeout = std::chrono::milliseconds(200);
  ProcessTrace trace = ExecutePlan(PlanLgpA(BindingMode::kStatic), *client_, *directory_, view_, exec);
  ASSERT_FALSE(trace.ok());
  EXPECT_EQ(*trace.error, ErrorCode::kStepTimeout);
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.steps[0].outcome, "error(StepTimeout)");
  for (const auto& unit : plant_->units()) EXPECT_EQ(Reserved(unit), "false") << unit;
}

// --- choreography ---------------------------------------------------------

Choreography Chain() {
  return LoadChoreography(testing::DataPath("choreographies/fill_heat_mix.json"));
}

TEST(ChoreographyRulesTest, SelfTriggeringRuleIsRejected) {
  std::vector<ChoreographyRule> rules = {
      {{"S1", "/26241/0/9", "x"}, {"S1", "/26241/0/9", ""}}};
  EXPECT_EQ(CodeOf([&] { ValidateRules(rules); }), ErrorCode::kInvalidRule);
  EXPECT_EQ(CodeOf([&] { ParseChoreography(R"([{"trigger":{}}])"); }), ErrorCode::kInvalidRule);
  EXPECT_EQ(Chain().rules.size(), 2u);
}

TEST_F(ExecutionTest, ChoreographyChainFiresInOrder) {
  StartPlant("colocated.json");
  Choreography c = Chain();
  c.until.reset();
  ChoreographyOptions options;
  options.quiescence = std::chrono::milliseconds(300);
  ChoreographyResult result = RunChoreography(c, *client_, view_, options);
  ASSERT_FALSE(result.error) << result.error_message;
  ASSERT_EQ(result.events.size(), 3u) << result.ToString();
  EXPECT_EQ(result.events[0].path, "/26241/0/6");
  EXPECT_EQ(result.events[1].path, "/26241/0/8");
  EXPECT_EQ(result.events[2].path, "/26241/0/9");
  for (const auto& e : result.events) EXPECT_EQ(e.outcome, "ok");
  EXPECT_EQ(result.firings, 2);
  ASSERT_TRUE(plant_->WaitIdle(std::chrono::seconds(5)));
  EXPECT_EQ(plant_->Snapshot().silo("S1").batch->history,
            (std::vector<std::string>{"Fill", "Heat", "Mix"}));
}

TEST_F(ExecutionTest, ChoreographyStopsAtUntil) {
  StartPlant("colocated.json");
  ChoreographyResult result = RunChoreography(Chain(), *client_, view_);
  EXPECT_TRUE(result.reached_until);
  EXPECT_EQ(result.events.size(), 3u);
}

TEST_F(ExecutionTest, ChoreographyWithoutRulesIsOneEvent) {
  StartPlant("colocated.json");
  Choreography c = Chain();
  c.rules.clear();
  c.until.reset();
  ChoreographyOptions options;
  options.quiescence = std::chrono::milliseconds(200);
  ChoreographyResult result = RunChoreography(c, *client_, view_, options);
  EXPECT_EQ(result.events.size(), 1u);
  EXPECT_EQ(result.firings, 0);
}

TEST_F(ExecutionTest, SharedTriggerFiresByRuleIndex) {
  StartPlant("two_silo.json");
  Choreography c;
  c.kick = RuleAction{"S1", "/26241/0/6", "ingredient=liqueur-base&volume=10"};
  // Both rules react to Fill; the later one finds S1 busy mixing.
  c.rules = {{{"S1", "/26241/0/10", "Fill"}, {"S1", "/26241/0/9", "duration=1"}},
             {{"S1", "/26241/0/10", "Fill"}, {"P12", "/26242/0/4", "volume=all"}}};
  ChoreographyOptions options;
  options.quiescence = std::chrono::milliseconds(300);
  ChoreographyResult result = RunChoreography(c, *client_, view_, options);
  ASSERT_EQ(result.events.size(), 3u) << result.ToString();
  EXPECT_EQ(result.events[1].cause, "rule 0");
  EXPECT_EQ(result.events[2].cause, "rule 1");
  EXPECT_EQ(result.events[1].outcome, "ok");
  EXPECT_EQ(result.events[2].outcome, "refused(4.09 busy)");
}

TEST_F(ExecutionTest, CyclicRulesHitTheBudget) {
  StartPlant("colocated.json");
  Choreography c = LoadChoreography(testing::DataPath("choreographies/heat_mix_cycle.json"));
  ChoreographyResult result = RunChoreography(c, *client_, view_);
  ASSERT_TRUE(result.error);
  EXPECT_EQ(*result.error, ErrorCode::kCycleBudgetExceeded);
  EXPECT_EQ(result.firings, 1000);
  EXPECT_EQ(result.events.size(), 1001u);
}

}  // namespace
}  // namespace cpms::orchestrator
