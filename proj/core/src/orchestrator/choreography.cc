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

#include "cpms/orchestrator/choreography.h"

#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace cpms::orchestrator {
namespace {

using json = nlohmann::json;
namespace codes = coap::codes;
using Seconds = std::chrono::duration<double>;

[[noreturn]] void InvalidRule(const std::string& message) {
  throw Error(ErrorCode::kInvalidRule, message);
}

Trigger ParseTrigger(const json& j) {
  return {j.at("endpoint").get<std::string>(), j.at("path").get<std::string>(),
          j.at("value").get<std::string>()};
}

RuleAction ParseAction(const json& j) {
  return {j.at("endpoint").get<std::string>(), j.at("path").get<std::string>(),
          j.value("args", "")};
}

}  // namespace

void ValidateRules(const std::vector<ChoreographyRule>& rules) {
  for (size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    std::string where = "rule " + std::to_string(i);
    if (r.trigger.endpoint.empty() || r.trigger.path.empty()) InvalidRule(where + ": empty trigger");
    if (r.action.endpoint.empty() || r.action.path.empty()) InvalidRule(where + ": empty action");
    if (r.trigger.endpoint == r.action.endpoint && r.trigger.path == r.action.path) {
      InvalidRule(where + ": action is its own trigger");
    }
  }
}

Choreography ParseChoreography(std::string_view text) {
  Choreography c;
  try {
    json doc = json::parse(text);
    const json& rules = doc.is_array() ? doc : doc.value("rules", json::array());
    for (const auto& r : rules) {
      c.rules.push_back({ParseTrigger(r.at("trigger")), ParseAction(r.at("action"))});
    }
    if (doc.is_object() && doc.contains("kick")) c.kick = ParseAction(doc["kick"]);
    if (doc.is_object() && doc.contains("until")) c.until = ParseTrigger(doc["until"]);
  } catch (const json::exception& e) {
    InvalidRule(std::string("malformed choreography: ") + e.what());
  }
  ValidateRules(c.rules);
  return c;
}

Choreography LoadChoreography(const std::string& path) {
  std::ifstream in(path);
  if (!in) InvalidRule("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseChoreography(buffer.str());
}

std::string ChoreographyResult::ToString(bool with_timestamps) const {
  std::string out;
  for (const auto& e : events) {
    char ts[32];
    std::snprintf(ts, sizeof ts, "%.3f", e.ts);
    out += (with_timestamps ? std::string(ts) : std::string("-")) + "\t" + e.cause + "\t" +
           e.endpoint + "\t" + e.path + "\t" + e.outcome + "\n";
  }
  return out;
}

ChoreographyResult RunChoreography(const Choreography& choreography, coap::Endpoint& client,
                                   const PlantView& plant, const ChoreographyOptions& options) {
  ValidateRules(choreography.rules);
  const auto start = std::chrono::steady_clock::now();
  auto now = [&] { return Seconds(std::chrono::steady_clock::now() - start).count(); };
  auto address = [&](const std::string& endpoint) {
    auto it = plant.addresses.find(endpoint);
    if (it == plant.addresses.end()) {
      throw Error(ErrorCode::kUnreachableEndpoint, endpoint + " is not registered");
    }
    return it->second;
  };

  // Notifications arrive on the endpoint's receive thread; actions are
  // issued from here.
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Trigger> inbox;

  std::map<std::pair<std::string, std::string>, std::unique_ptr<coap::Observation>> observed;
  auto watch = [&](const Trigger& t) {
    auto key = std::make_pair(t.endpoint, t.path);
    if (observed.contains(key)) return;
    std::unique_ptr<coap::Observation> obs;
    try {
      obs = client.Observe(
          address(t.endpoint), coap::MakeRequest(codes::kGet, t.path),
          [&, endpoint = t.endpoint, path = t.path](const coap::CoapMessage& n) {
            std::lock_guard lock(mu);
            inbox.push_back({endpoint, path, n.PayloadString()});
            cv.notify_all();
          },
          options.request);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnreachableEndpoint, t.endpoint + ": " + e.what());
    }
    if (!obs->established()) {
      throw Error(ErrorCode::kUnreachableEndpoint, t.endpoint + " refused observation of " + t.path);
    }
    observed.emplace(key, std::move(obs));
  };
  for (const auto& rule : choreography.rules) watch(rule.trigger);
  if (choreography.until) watch(*choreography.until);

  ChoreographyResult result;
  auto perform = [&](const RuleAction& action, std::string cause) {
    ChoreographyEvent event{now(), std::move(cause), action.endpoint, action.path, "ok"};
    try {
      auto response = client.Request(address(action.endpoint),
                                     coap::MakeRequest(codes::kPost, action.path, action.args),
                                     options.request);
      if (!coap::IsSuccess(response)) {
        event.outcome = "refused(" + response.code.ToString() +
                        (response.payload.empty() ? "" : " " + response.PayloadString()) + ")";
      }
    } catch (const Error& e) {
      event.outcome = "error(" + std::string(ErrorCodeName(e.code())) + ")";
    }
    result.events.push_back(std::move(event));
  };

  if (choreography.kick) perform(*choreography.kick, "kick");

  std::unique_lock lock(mu);
  while (true) {
    if (!cv.wait_for(lock, options.quiescence, [&] { return !inbox.empty(); })) break;
    Trigger seen = std::move(inbox.front());
    inbox.pop_front();
    lock.unlock();

    if (choreography.until && seen == *choreography.until) {
      result.reached_until = true;
      lock.lock();
      break;
    }
    bool abort = false;
    for (size_t i = 0; i < choreography.rules.size(); ++i) {
      if (!(choreography.rules[i].trigger == seen)) continue;
      if (result.firings >= options.budget) {
        result.error = ErrorCode::kCycleBudgetExceeded;
        result.error_message = "more than " + std::to_string(options.budget) + " firings";
        abort = true;
        break;
      }
      ++result.firings;
      perform(choreography.rules[i].action, "rule " + std::to_string(i));
    }
    lock.lock();
    if (abort) break;
  }
  lock.unlock();
  observed.clear();
  return result;
}

}  // namespace cpms::orchestrator
