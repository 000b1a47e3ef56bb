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

#include "cpms/bench/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"

namespace cpms::bench {
namespace {

std::string Precise(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double Number(std::string_view text) {
  auto v = ParseDouble(Trim(text));
  if (!v) throw Error(ErrorCode::kInvalidConfig, "not a number: " + std::string(text));
  return *v;
}

}  // namespace

LatencyStats ComputeStats(std::vector<double> samples_ms) {
  if (samples_ms.empty()) throw Error(ErrorCode::kInvalidConfig, "no samples");
  LatencyStats s;
  const double n = static_cast<double>(samples_ms.size());
  s.avg_ms = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / n;
  auto [lo, hi] = std::minmax_element(samples_ms.begin(), samples_ms.end());
  s.min_ms = *lo;
  s.max_ms = *hi;
  if (samples_ms.size() > 1) {
    double sq = 0;
    for (double x : samples_ms) sq += (x - s.avg_ms) * (x - s.avg_ms);
    s.stdev_ms = std::sqrt(sq / (n - 1));
  }
  s.samples = std::move(samples_ms);
  return s;
}

std::string FormatTable(const NamedStats& stats) {
  constexpr int kLabel = 7;
  std::vector<int> widths;
  for (const auto& [name, s] : stats) widths.push_back(std::max<int>(12, name.size() + 2));
  std::string out(kLabel, ' ');
  for (size_t i = 0; i < stats.size(); ++i) {
    const std::string& name = stats[i].first;
    out += std::string(widths[i] - name.size(), ' ') + name;
  }
  out += "\n";
  auto row = [&](const char* label, double LatencyStats::*field) {
    char cell[64];
    std::snprintf(cell, sizeof cell, "%-*s", kLabel, label);
    out += cell;
    for (size_t i = 0; i < stats.size(); ++i) {
      std::snprintf(cell, sizeof cell, "%*.2f", widths[i], stats[i].second.*field);
      out += cell;
    }
    out += "\n";
  };
  row("avg", &LatencyStats::avg_ms);
  row("min", &LatencyStats::min_ms);
  row("max", &LatencyStats::max_ms);
  row("stdev", &LatencyStats::stdev_ms);
  return out;
}

std::string SamplesCsv(const std::vector<double>& samples_ms) {
  std::string out = "sample,latency_ms\n";
  for (size_t i = 0; i < samples_ms.size(); ++i) {
    out += std::to_string(i) + "," + Precise(samples_ms[i]) + "\n";
  }
  return out;
}

std::vector<double> ParseSamplesCsv(const std::string& text) {
  std::vector<double> samples;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    auto fields = Split(line, ',');
    if (fields.size() != 2) throw Error(ErrorCode::kInvalidConfig, "bad sample row: " + line);
    samples.push_back(Number(fields[1]));
  }
  return samples;
}

std::string StatsCsv(const NamedStats& stats) {
  std::string out = "scenario,avg_ms,min_ms,max_ms,stdev_ms,n\n";
  for (const auto& [name, s] : stats) {
    out += name + "," + Precise(s.avg_ms) + "," + Precise(s.min_ms) + "," + Precise(s.max_ms) +
           "," + Precise(s.stdev_ms) + "," + std::to_string(s.samples.size()) + "\n";
  }
  return out;
}

NamedStats ParseStatsCsv(const std::string& text) {
  NamedStats stats;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    auto f = Split(line, ',');
    if (f.size() != 6) throw Error(ErrorCode::kInvalidConfig, "bad stats row: " + line);
    LatencyStats s;
    s.avg_ms = Number(f[1]);
    s.min_ms = Number(f[2]);
    s.max_ms = Number(f[3]);
    s.stdev_ms = Number(f[4]);
    stats.emplace_back(std::string(f[0]), s);
  }
  return stats;
}

}  // namespace cpms::bench
