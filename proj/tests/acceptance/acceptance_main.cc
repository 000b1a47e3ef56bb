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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cpms/bench/scenarios.h"
#include "cpms/bench/stats.h"
#include "cpms/coap/message.h"
#include "cpms/common/clock.h"
#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/lwm2m/device.h"
#include "cpms/orchestrator/choreography.h"
#include "cpms/orchestrator/executor.h"
#include "cpms/orchestrator/planner.h"
#include "cpms/orchestrator/topology.h"
#include "cpms/plant/objects.h"
#include "cpms/plant/runtime.h"
#include "cpms/rd/client.h"
#include "cpms/rd/server.h"
#include "cpms/semantic/query.h"
#include "cpms/semantic/turtle.h"
#include "fixture_util.h"
#include "plant_directory.h"

namespace cpms {
namespace {

using orchestrator::BindingMode;
using orchestrator::BoundPlan;
using orchestrator::PlantView;
using orchestrator::ProcessTrace;
using semantic::Term;
namespace codes = coap::codes;

const std::string kLocal = "http://ss4.ece.upatras.gr/";

// Collects failed expectations for one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <typename A, typename B>
  void ExpectEq(const A& actual, const B& expected, const std::string& what) {
    if (!(actual == expected)) failures_.push_back(what);
  }
  void Note(const std::string& text) { notes_.push_back(text); }

  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int number;
  std::string title;
  double budget_s;
  std::function<void(Checker&)> body;
};

// --- shared fixtures -------------------------------------------------------

plant::PlantConfig Plant(const std::string& file) {
  return plant::LoadPlantConfig(testing::DataPath("plants/" + file));
}

orchestrator::ProcessSpec Process(const std::string& file) {
  return orchestrator::LoadProcessSpec(testing::DataPath("processes/" + file));
}

// A directory server, a running plant registered with it and a client.
struct LivePlant {
  explicit LivePlant(const plant::PlantConfig& config, plant::RuntimeOptions options = {}) {
    server = rd::RdServer::Start(coap::Address::Parse("127.0.0.1:0"), clock);
    options.directory = server->address();
    options.registration.auto_refresh = false;
    runtime = plant::PlantRuntime::Start(config, options);
    client = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
    directory = std::make_unique<rd::CoapDirectoryClient>(*client, server->address());
  }

  std::string Reserved(const std::string& unit) const {
    auto& dev = runtime->device(unit);
    int object = dev.objects()[0].object_id;
    return lwm2m::FormatValue(*dev.GetValue({object, 0, plant::silo_res::kReserved}));
  }

  SteadyClock clock;
  std::unique_ptr<rd::RdServer> server;
  std::unique_ptr<plant::PlantRuntime> runtime;
  std::unique_ptr<coap::Endpoint> client;
  std::unique_ptr<rd::CoapDirectoryClient> directory;
};

std::string PatternLine(const semantic::TriplePattern& p) {
  std::string path;
  for (const auto& step : p.path) {
    if (!path.empty()) path += "/";
    path += step.ToString();
  }
  return p.subject.ToString() + " " + path + " " + p.object.ToString();
}

std::string HeatServiceWithMax(const std::string& value) {
  std::string text = testing::Fixture("heat_service.ttl");
  text.replace(text.find("\"70\""), 4, "\"" + value + "\"");
  return text;
}

// --- 1: discovery over a running device -----------------------------------

std::vector<rd::SemanticMatch> DiscoverFromSingleSilo(const std::string& ttl, double heat_max) {
  auto dir = std::filesystem::temp_directory_path() /
             ("cpms-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string path = (dir / "silo.ttl").string();
  std::ofstream(path) << ttl;
  plant::PlantConfig config = plant::ParsePlantConfig(
      R"({"name": "one-silo", "silos": [{"id": "smartSilo4", "capacity_liters": 100,
           "services": ["Heat"], "heat_max_C": )" +
      FormatNumber(heat_max) + R"(, "description_file": ")" + path + R"("}], "pipes": []})");
  LivePlant live(config);
  auto matches = live.directory->LookupSemantic(testing::Fixture("heat_discovery.rq"));
  std::filesystem::remove_all(dir);
  return matches;
}

void Discovery(Checker& c) {
  auto matches = DiscoverFromSingleSilo(testing::Fixture("heat_service.ttl"), 70);
  c.ExpectEq(matches.size(), 1u, "exactly one solution at maxTemp 70");
  if (matches.size() == 1) {
    c.ExpectEq(matches[0].endpoint, std::string("smartSilo4"), "attributed to smartSilo4");
    c.ExpectEq(matches[0].binding.size(), 1u, "only ?service is projected");
    c.ExpectEq(matches[0].binding.at("service"), Term::Iri(kLocal + "heat"),
               "?service = local:heat");
  }
  c.Expect(DiscoverFromSingleSilo(HeatServiceWithMax("40"), 40).empty(),
           "zero solutions at maxTemp 40");
}

// --- 2: parser fidelity ----------------------------------------------------

void ParserFidelity(Checker& c) {
  semantic::Graph g = semantic::ParseTurtle(testing::Fixture("heat_service.ttl"));
  auto expected_triples = testing::FixtureLines("heat_service.nt");
  c.ExpectEq(expected_triples.size(), 12u, "hand expansion lists 12 triples");
  c.ExpectEq(g.size(), 12u, "description parses to 12 triples");
  std::set<std::string> lines;
  for (const auto& t : g) {
    lines.insert(t.subject.ToString() + " " + t.predicate.ToString() + " " + t.object.ToString() +
                 " .");
  }
  c.ExpectEq(lines, std::set<std::string>(expected_triples.begin(), expected_triples.end()),
             "triples equal the hand expansion");
  c.Expect(g.Contains({Term::Iri(kLocal + "heat"), Term::Iri(semantic::vocab::Rdf("type")),
                       Term::Iri(semantic::vocab::Lps("Service"))}),
           "local:heat a lps:Service");
  c.Expect(g.Contains({Term::Iri(kLocal + "heat"), Term::Iri(semantic::vocab::Rdfs("label")),
                       Term::LangLiteral("Heat", "en")}),
           "local:heat rdfs:label \"Heat\"@en");
  c.Expect(g.Contains({Term::Iri(kLocal + "maxTemp"), Term::Iri(semantic::vocab::Lps("hasValue")),
                       Term::Literal("70", semantic::vocab::Xsd("double"))}),
           "local:maxTemp lps:hasValue \"70\"^^xsd:double");

  // The pattern count is held to the independent hand expansion of the
  // query text (one pattern per predicate-object pair).
  semantic::Query q = semantic::ParseQuery(testing::Fixture("heat_discovery.rq"));
  auto expected_patterns = testing::FixtureLines("heat_discovery.patterns");
  std::vector<std::string> patterns;
  for (const auto& p : q.patterns) patterns.push_back(PatternLine(p));
  c.ExpectEq(patterns, expected_patterns, "query patterns equal the hand expansion");
  c.Note(std::to_string(patterns.size()) + " patterns");
  c.ExpectEq(q.filters.size(), 1u, "one filter");
  if (q.filters.size() == 1) {
    c.ExpectEq(q.filters[0].variable, Term::Variable("value"), "filter variable ?value");
    c.ExpectEq(q.filters[0].op, semantic::Comparator::kGe, "filter op >=");
    c.ExpectEq(q.filters[0].value.NumericValue(), std::optional<double>(50.0), "filter value 50");
  }
}

// --- 3: codec vectors and round trip -----------------------------------------

coap::Bytes B(std::initializer_list<int> values) {
  coap::Bytes out;
  for (int v : values) out.push_back(static_cast<uint8_t>(v));
  return out;
}

void CodecVectors(Checker& c) {
  coap::CoapMessage get;
  get.type = coap::MessageType::kConfirmable;
  get.code = codes::kGet;
  get.message_id = 0x1234;
  coap::Bytes get_wire = B({0x40, 0x01, 0x12, 0x34});
  c.ExpectEq(coap::Encode(get), get_wire, "CON GET encodes");
  c.ExpectEq(coap::Decode(get_wire), get, "CON GET decodes");

  coap::CoapMessage ack;
  ack.type = coap::MessageType::kAcknowledgement;
  ack.code = codes::kContent;
  ack.message_id = 0x0001;
  ack.SetPayload("22.5");
  coap::Bytes ack_wire = B({0x60, 0x45, 0x00, 0x01, 0xFF, '2', '2', '.', '5'});
  c.ExpectEq(coap::Encode(ack), ack_wire, "ACK 2.05 encodes");
  c.ExpectEq(coap::Decode(ack_wire), ack, "ACK 2.05 decodes");

  std::mt19937 rng(20240611);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int mismatches = 0;
  const int kMessages = 10000;
  for (int i = 0; i < kMessages; ++i) {
    coap::CoapMessage m;
    m.type = static_cast<coap::MessageType>(pick(0, 3));
    m.code = coap::Code{static_cast<uint8_t>(pick(0, 7)), static_cast<uint8_t>(pick(0, 31))};
    m.message_id = static_cast<uint16_t>(pick(0, 0xffff));
    m.token.resize(pick(0, 8));
    for (auto& b : m.token) b = static_cast<uint8_t>(pick(0, 255));
    int count = pick(0, 6);
    for (int k = 0; k < count; ++k) {
      uint16_t number = static_cast<uint16_t>(pick(0, 2) == 0 ? pick(0, 15) : pick(0, 65000));
      coap::Bytes value(pick(0, k == 0 ? 400 : 20));
      for (auto& b : value) b = static_cast<uint8_t>(pick(0, 255));
      m.AddOption(number, std::move(value));
    }
    if (pick(0, 1)) {
      m.payload.resize(pick(1, 64));
      for (auto& b : m.payload) b = static_cast<uint8_t>(pick(0, 255));
    }
    if (!(coap::Decode(coap::Encode(m)) == m)) ++mismatches;
  }
  c.ExpectEq(mismatches, 0, "random round trip");
  c.Note(std::to_string(kMessages) + " random messages");
}

// --- 4: directory lifecycle ------------------------------------------------

void RdLifecycle(Checker& c) {
  ManualClock clock;
  auto server = rd::RdServer::Start(coap::Address::Parse("127.0.0.1:0"), clock,
                                    rd::RdServer::Options{std::chrono::duration<double>(0)});
  auto ep = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
  rd::CoapDirectoryClient rd(*ep, server->address());
  auto call = [&](std::string_view path, std::string_view payload, std::string_view query) {
    return ep->Request(server->address(), coap::MakeRequest(codes::kPost, path, payload, query));
  };

  auto reg = call("/rd", "</26241/0>;rt=\"lps.silo\"", "ep=S1&lt=1");
  c.ExpectEq(reg.code, codes::kCreated, "register answers 2.01");
  std::string location = reg.LocationPath();
  auto found = rd.LookupLinks({.endpoint = "S1"});
  c.ExpectEq(found.size(), 1u, "lookup shows the entry");
  clock.Advance(2);
  c.Expect(rd.LookupLinks({}).empty(), "expired after 2 s without refresh");
  c.ExpectEq(call(location, "", "").code, codes::kNotFound, "refresh after expiry is 4.04");

  reg = call("/rd", "</26241/0>;rt=\"lps.silo\"", "ep=S1&lt=1");
  location = reg.LocationPath();
  bool refreshed = true;
  for (int i = 0; i < 4; ++i) {
    clock.Advance(0.75);
    refreshed = refreshed && call(location, "", "").code == codes::kChanged;
  }
  c.Expect(refreshed, "refreshes accepted");
  c.ExpectEq(rd.LookupLinks({}).size(), 1u, "refreshed entry stays live at t+3 s");
}

// --- 5: PIM to PSM -------------------------------------------------------------

BoundPlan OfflinePlan(const std::string& plant_file, const std::string& process_file) {
  ManualClock clock;
  rd::Directory directory(clock);
  rd::LocalDirectoryClient client(directory);
  testing::RegisterOffline(directory, Plant(plant_file));
  PlantView view = orchestrator::LoadPlantView(client);
  return orchestrator::TransformPimToPsm(Process(process_file), client, view,
                                         BindingMode::kStatic);
}

bool RoutesAreMinimal(int trials, int* checked) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < trials; ++trial) {
    int silos = std::uniform_int_distribution<int>(2, 6)(rng);
    int pipes = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<orchestrator::PipeLink> links;
    for (int i = 0; i < pipes; ++i) {
      int a = std::uniform_int_distribution<int>(0, silos - 1)(rng);
      int b = std::uniform_int_distribution<int>(0, silos - 2)(rng);
      if (b >= a) ++b;
      links.push_back({"P" + std::to_string(i), "S" + std::to_string(a), "S" + std::to_string(b)});
    }
    orchestrator::Topology t(links);
    for (int a = 0; a < silos; ++a) {
      for (int b = 0; b < silos; ++b) {
        if (a == b) continue;
        std::string from = "S" + std::to_string(a), to = "S" + std::to_string(b);
        auto all = t.AllRoutes(from, to);
        auto chosen = t.ShortestRoute(from, to);
        if (chosen.has_value() == all.empty()) return false;
        if (!chosen) continue;
        std::string at = from;
        for (const auto& p : *chosen) {
          if (p.from != at) return false;
          at = p.to;
        }
        if (at != to) return false;
        size_t min_hops = SIZE_MAX;
        for (const auto& r : all) min_hops = std::min(min_hops, r.size());
        if (chosen->size() != min_hops) return false;
        ++*checked;
      }
    }
  }
  return true;
}

void PimToPsm(Checker& c) {
  std::vector<std::string> expected = {"Fill@S1", "Transfer S1->S2", "Heat@S2",
                                       "Transfer S2->S1", "Mix@S1", "Empty@S1"};
  c.ExpectEq(OfflinePlan("two_silo.json", "lgpA.json").StepNames(), expected,
             "two-silo plan is the 6-step sequence");
  auto colocated = OfflinePlan("colocated.json", "lgpA.json").StepNames();
  c.Expect(std::none_of(colocated.begin(), colocated.end(),
                        [](const std::string& s) { return s.rfind("Transfer", 0) == 0; }),
           "co-located plan has no Transfer");
  int checked = 0;
  c.Expect(RoutesAreMinimal(400, &checked), "routes minimal against enumeration");
  c.Note(std::to_string(checked) + " routed pairs");
}

// --- 6: end-to-end lgpA --------------------------------------------------------

struct EndToEnd {
  std::string plan;
  ProcessTrace trace;
  bool released = true;
  double delivered_liters = 0;
  double input_liters = 0;
};

EndToEnd RunLgpA() {
  plant::PlantConfig config = Plant("two_silo.json");
  LivePlant live(config);
  PlantView view = orchestrator::LoadPlantView(*live.directory);
  auto pim = Process("lgpA.json");
  BoundPlan plan =
      orchestrator::TransformPimToPsm(pim, *live.directory, view, BindingMode::kStatic);
  EndToEnd out;
  out.plan = plan.ToString();
  out.trace = orchestrator::ExecutePlan(plan, *live.client, *live.directory, view);
  live.runtime->WaitIdle(std::chrono::seconds(2));
  for (const auto& unit : live.runtime->units()) {
    out.released = out.released && live.Reserved(unit) == "false";
  }
  const auto& s1 = config.silos[0];
  out.input_liters = s1.capacity_liters * pim.inputs[0].volume_pct / 100.0;
  if (out.trace.final_batch) out.delivered_liters = out.trace.final_batch->Liters();
  return out;
}

void EndToEndLgpA(Checker& c) {
  EndToEnd run = RunLgpA();
  c.Expect(run.trace.ok(), "process completes: " + run.trace.error_message);
  c.ExpectEq(run.trace.steps.size(), 6u, "six steps executed");
  for (const auto& s : run.trace.steps) c.ExpectEq(s.outcome, std::string("ok"), s.step + " ok");
  c.Expect(run.trace.final_batch.has_value(), "batch delivered");
  if (run.trace.final_batch) {
    const auto& batch = *run.trace.final_batch;
    c.Expect(std::abs(run.delivered_liters - run.input_liters) <= 1e-9 * run.input_liters,
             "volume conserved");
    c.ExpectEq(batch.history, std::vector<std::string>{"Fill", "Heat", "Mix"},
               "history Fill, Heat, Mix");
    c.Expect(std::abs(batch.temp_c - 50) <= 1e-6, "batch at 50 C");
    c.Note(FormatNumber(run.delivered_liters) + " L at " + FormatNumber(batch.temp_c) + " C");
  }
  c.Expect(run.released, "every device reserved=false");
}

// --- 7: reservation safety -----------------------------------------------------

void ReservationSafety(Checker& c) {
  LivePlant live(Plant("two_silo.json"));
  PlantView view = orchestrator::LoadPlantView(*live.directory);
  BoundPlan plan = orchestrator::TransformPimToPsm(Process("lgpA.json"), *live.directory, view,
                                                   BindingMode::kStatic);
  const int kInstances = 10;
  std::vector<ProcessTrace> traces(kInstances);
  std::vector<std::thread> threads;
  for (int i = 0; i < kInstances; ++i) {
    threads.emplace_back([&, i] {
      auto ep = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
      rd::CoapDirectoryClient rd(*ep, live.server->address());
      orchestrator::ExecutionOptions options;
      options.holder = "lgpA-" + std::to_string(i);
      traces[i] = orchestrator::ExecutePlan(plan, *ep, rd, view, options);
    });
  }
  for (auto& t : threads) t.join();
  live.runtime->WaitIdle(std::chrono::seconds(2));

  int completed = 0, failed = 0;
  for (const auto& t : traces) {
    if (t.ok()) {
      ++completed;
      bool batch_ok = t.final_batch && std::abs(t.final_batch->Liters() - 50) < 1e-9 &&
                      t.final_batch->history == std::vector<std::string>{"Fill", "Heat", "Mix"};
      c.Expect(batch_ok, t.holder + " delivered an uncontaminated batch");
    } else {
      ++failed;
      c.Expect(t.error == ErrorCode::kBusy || t.error == ErrorCode::kReservationLost,
               t.holder + " failed cleanly, got " + t.error_message);
    }
  }
  c.ExpectEq(completed + failed, kInstances, "every instance finished");
  c.Expect(completed >= 1, "at least one instance completed");

  // Every action the plant accepted was requested by the holder of every
  // unit it touched.
  int accepted = 0, foreign = 0;
  for (const auto& r : live.runtime->action_log()) {
    if (!r.accepted) continue;
    ++accepted;
    for (const auto& h : Split(r.reserved_by, ',')) {
      if (h != r.holder) ++foreign;
    }
    if (r.reserved_by.empty()) ++foreign;
  }
  c.ExpectEq(foreign, 0, "no step executed on a device reserved by another instance");

  // Across instances, executed steps never interleave: static binding holds
  // every unit of the plan for the whole run.
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : live.runtime->action_log()) {
    if (r.accepted) order.emplace_back(r.holder, r.action);
  }
  std::set<std::string> closed;
  for (size_t i = 1; i < order.size(); ++i) {
    if (order[i].first != order[i - 1].first) closed.insert(order[i - 1].first);
    c.Expect(!closed.contains(order[i].first), "instance " + order[i].first + " resumed after handover");
  }

  bool released = true;
  for (const auto& unit : live.runtime->units()) released = released && live.Reserved(unit) == "false";
  c.Expect(released, "all devices released");
  c.Note(std::to_string(completed) + " completed, " + std::to_string(failed) + " refused, " +
         std::to_string(accepted) + " device actions");
}

// --- 8: benchmark --------------------------------------------------------------

void Benchmark(Checker& c) {
  bench::BenchOptions options;
  options.samples = 1000;
  bench::NamedStats table;
  std::map<bench::Scenario, double> mean;
  for (auto s : {bench::Scenario::kDirectCall, bench::Scenario::kInProcChannel,
                 bench::Scenario::kRawUdp2N, bench::Scenario::kLwm2m2N}) {
    auto result = bench::RunBench(s, options);
    c.ExpectEq(result.stats.samples.size(), 1000u, std::string(bench::ScenarioName(s)) + " n=1000");
    mean[s] = result.stats.avg_ms;
    table.emplace_back(std::string(bench::ScenarioName(s)), std::move(result.stats));
  }
  std::printf("Round trip of Execute (ms), n=1000\n%s", bench::FormatTable(table).c_str());
  c.Expect(mean[bench::Scenario::kDirectCall] < mean[bench::Scenario::kInProcChannel],
           "DirectCall < InProcChannel");
  c.Expect(mean[bench::Scenario::kInProcChannel] < mean[bench::Scenario::kRawUdp2N],
           "InProcChannel < RawUdp_2N");
  c.Expect(mean[bench::Scenario::kRawUdp2N] < mean[bench::Scenario::kLwm2m2N],
           "RawUdp_2N < Lwm2m_2N");
  c.Expect(mean[bench::Scenario::kDirectCall] < 0.010, "DirectCall mean < 10 us");
  double lwm2m = mean[bench::Scenario::kLwm2m2N];
  char measured[64];
  std::snprintf(measured, sizeof(measured), "%.3f ms", lwm2m);
  c.Expect(lwm2m >= 1.0 && lwm2m < 1000.0,
           std::string("Lwm2m_2N mean in the millisecond range [1, 1000) ms, measured ") +
               measured);
}

// --- 9: choreography -----------------------------------------------------------

void Choreography(Checker& c) {
  {
    LivePlant live(Plant("colocated.json"));
    PlantView view = orchestrator::LoadPlantView(*live.directory);
    auto chain = orchestrator::LoadChoreography(testing::DataPath("choreographies/fill_heat_mix.json"));
    chain.until.reset();
    orchestrator::ChoreographyOptions options;
    options.quiescence = std::chrono::milliseconds(300);
    auto result = orchestrator::RunChoreography(chain, *live.client, view, options);
    c.Expect(!result.error, "chain runs without error: " + result.error_message);
    std::vector<std::string> paths;
    for (const auto& e : result.events) {
      paths.push_back(e.path);
      c.ExpectEq(e.outcome, std::string("ok"), e.cause + " ok");
    }
    c.ExpectEq(paths, std::vector<std::string>{"/26241/0/6", "/26241/0/8", "/26241/0/9"},
               "fill, heat, mix in order, then quiescence");
    live.runtime->WaitIdle(std::chrono::seconds(2));
    auto batch = live.runtime->Snapshot().silo("S1").batch;
    c.Expect(batch && batch->history == std::vector<std::string>{"Fill", "Heat", "Mix"},
             "batch history Fill, Heat, Mix");
  }
  {
    LivePlant live(Plant("colocated.json"));
    PlantView view = orchestrator::LoadPlantView(*live.directory);
    auto cycle = orchestrator::LoadChoreography(testing::DataPath("choreographies/heat_mix_cycle.json"));
    auto result = orchestrator::RunChoreography(cycle, *live.client, view);
    c.Expect(result.error == ErrorCode::kCycleBudgetExceeded, "cyclic rules abort");
    c.ExpectEq(result.firings, 1000, "abort at 1000 firings");
  }
}

// --- 10: determinism ---------------------------------------------------------

void Determinism(Checker& c) {
  for (const auto& [plant_file, process] :
       {std::pair{"two_silo.json", "lgpA.json"}, std::pair{"colocated.json", "lgpA.json"},
        std::pair{"liqueur_plant.json", "lgpB.json"}}) {
    c.ExpectEq(OfflinePlan(plant_file, process).ToString(),
               OfflinePlan(plant_file, process).ToString(),
               std::string("plan identical for ") + plant_file);
  }
  EndToEnd a = RunLgpA();
  EndToEnd b = RunLgpA();
  c.ExpectEq(a.plan, b.plan, "end-to-end plans identical");
  c.ExpectEq(a.trace.ToString(false), b.trace.ToString(false), "normalized traces identical");
  c.Expect(a.trace.final_batch && b.trace.final_batch &&
               plant::FormatBatch(*a.trace.final_batch) == plant::FormatBatch(*b.trace.final_batch),
           "delivered batches identical");
}

int RunAll() {
  std::vector<Criterion> criteria = {
      {1, "discovery of the heat service", 1, Discovery},
      {2, "turtle and query parser fidelity", 1, ParserFidelity},
      {3, "CoAP codec vectors and round trip", 10, CodecVectors},
      {4, "resource directory lifecycle", 1, RdLifecycle},
      {5, "PIM to PSM transformation", 1, PimToPsm},
      {6, "end-to-end lgpA", 5, EndToEndLgpA},
      {7, "reservation safety under 10 instances", 30, ReservationSafety},
      {8, "Execute latency benchmark", 120, Benchmark},
      {9, "choreography order and cycle budget", 5, Choreography},
      {10, "determinism of plans and traces", 60, Determinism},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checker);
    } catch (const std::exception& e) {
      checker.Expect(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= criterion.budget_s) {
      checker.Expect(false, "took " + FormatNumber(elapsed) + " s, budget " +
                                FormatNumber(criterion.budget_s) + " s");
    }
    std::string notes;
    for (const auto& n : checker.notes()) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("%s criterion %d: %s (%.3f s%s%s)\n", checker.ok() ? "PASS" : "FAIL",
                criterion.number, criterion.title.c_str(), elapsed, notes.empty() ? "" : "; ",
                notes.c_str());
    for (const auto& f : checker.failures()) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    if (!checker.ok()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return std::min(failed, 125);
}

}  // namespace
}  // namespace cpms

int main(int argc, char** argv) {
  if (auto code = cpms::bench::ServeChildIfRequested(argc, argv)) return *code;
  return cpms::RunAll();
}
