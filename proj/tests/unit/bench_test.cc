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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "cpms/bench/scenarios.h"
#include "cpms/bench/stats.h"
#include "cpms/common/error.h"

namespace cpms::bench {
namespace {

TEST(StatsTest, ClosedForm) {
  LatencyStats s = ComputeStats({1, 2, 3});
  EXPECT_DOUBLE_EQ(s.avg_ms, 2);
  EXPECT_DOUBLE_EQ(s.min_ms, 1);
  EXPECT_DOUBLE_EQ(s.max_ms, 3);
  EXPECT_DOUBLE_EQ(s.stdev_ms, 1);
  EXPECT_EQ(ComputeStats({4}).stdev_ms, 0);
  EXPECT_THROW(ComputeStats({}), Error);
}

TEST(StatsTest, TableShape) {
  LatencyStats s = ComputeStats({1, 2, 3});
  std::string one = FormatTable({{"DirectCall", s}});
  EXPECT_EQ(one,
            "         DirectCall\n"
            "avg            2.00\n"
            "min            1.00\n"
            "max            3.00\n"
            "stdev          1.00\n");
  NamedStats six;
  for (Scenario sc : AllScenarios()) six.emplace_back(std::string(ScenarioName(sc)), s);
  std::string table = FormatTable(six);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 5);
  EXPECT_NE(table.find("Lwm2m_2N"), std::string::npos);
}

TEST(StatsTest, CsvRoundTrips) {
  std::vector<double> samples = {0.0123456789012345, 1.5, 2.25, 1e-4};
  EXPECT_EQ(ParseSamplesCsv(SamplesCsv(samples)), samples);
  NamedStats stats = {{"RawUdp_1N", ComputeStats(samples)}};
  NamedStats back = ParseStatsCsv(StatsCsv(stats));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].first, "RawUdp_1N");
  EXPECT_EQ(back[0].second.avg_ms, stats[0].second.avg_ms);
  EXPECT_EQ(back[0].second.stdev_ms, stats[0].second.stdev_ms);
}

TEST(ScenarioTest, Names) {
  for (Scenario s : AllScenarios()) EXPECT_EQ(ParseScenario(ScenarioName(s)), s);
  EXPECT_FALSE(ParseScenario("Docker_2N"));
  EXPECT_EQ(HandleHeat(kHeatPayload), "2.04");
  EXPECT_EQ(HandleHeat("setpoint=80"), "4.00");
}

// Every scenario runs; the raw samples agree with the reported stats.
TEST(ScenarioTest, EveryScenarioProducesConsistentStats) {
  BenchOptions options;
  options.samples = 50;
  options.warmup = 5;
  for (Scenario s : AllScenarios()) {
    SCOPED_TRACE(ScenarioName(s));
    BenchResult r = RunBench(s, options);
    ASSERT_EQ(r.stats.samples.size(), 50u);
    LatencyStats again = ComputeStats(ParseSamplesCsv(SamplesCsv(r.stats.samples)));
    EXPECT_NEAR(again.avg_ms, r.stats.avg_ms, 1e-9);
    EXPECT_NEAR(again.stdev_ms, r.stats.stdev_ms, 1e-9);
    EXPECT_LE(r.stats.min_ms, r.stats.avg_ms);
    EXPECT_LE(r.stats.avg_ms, r.stats.max_ms);
  }
}

TEST(ScenarioTest, MissingServerExecutable) {
  BenchOptions options;
  options.samples = 1;
  options.server_executable = "/nonexistent/cpms";
  try {
    RunBench(Scenario::kRawUdp2N, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLaunchError);
  }
}

}  // namespace
}  // namespace cpms::bench

int main(int argc, char** argv) {
  if (auto code = cpms::bench::ServeChildIfRequested(argc, argv)) return *code;
  ::testing::InitGoogleTest(&argc, argv);
  return RUN_ALL_TESTS();
}
