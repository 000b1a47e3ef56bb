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

#ifndef CPMS_BENCH_STATS_H_
#define CPMS_BENCH_STATS_H_

#include <string>
#include <utility>
#include <vector>

namespace cpms::bench {

struct LatencyStats {
  double avg_ms = 0;
  double min_ms = 0;
  double max_ms = 0;
  double stdev_ms = 0;  // sample standard deviation (n - 1)
  std::vector<double> samples;
};

// Throws InvalidConfig for an empty sample list.
LatencyStats ComputeStats(std::vector<double> samples_ms);

using NamedStats = std::vector<std::pair<std::string, LatencyStats>>;

// Rows avg/min/max/stdev, one column per scenario, milliseconds with two
// decimals.
std::string FormatTable(const NamedStats& stats);

// "sample,latency_ms" followed by one row per sample at full precision.
std::string SamplesCsv(const std::vector<double>& samples_ms);
std::vector<double> ParseSamplesCsv(const std::string& text);

// "scenario,avg_ms,min_ms,max_ms,stdev_ms,n".
std::string StatsCsv(const NamedStats& stats);
NamedStats ParseStatsCsv(const std::string& text);

}  // namespace cpms::bench

#endif  // CPMS_BENCH_STATS_H_
