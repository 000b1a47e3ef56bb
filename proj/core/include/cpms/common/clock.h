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

#ifndef CPMS_COMMON_CLOCK_H_
#define CPMS_COMMON_CLOCK_H_

#include <chrono>
#include <mutex>

namespace cpms {

// Seconds since an arbitrary, clock-specific epoch. Never decreases.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double Now() const = 0;
};

class SteadyClock final : public Clock {
 public:
  SteadyClock() : origin_(std::chrono::steady_clock::now()) {}

  double Now() const override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         origin_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point origin_;
};

// Test and simulation clock; time moves only through Advance().
class ManualClock final : public Clock {
 public:
  explicit ManualClock(double start = 0.0) : now_(start) {}

  double Now() const override {
    std::lock_guard lock(mu_);
    return now_;
  }

  void Advance(double seconds) {
    std::lock_guard lock(mu_);
    if (seconds > 0) now_ += seconds;
  }

 private:
  mutable std::mutex mu_;
  double now_;
};

}  // namespace cpms

#endif  // CPMS_COMMON_CLOCK_H_
