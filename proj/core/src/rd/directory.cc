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

#include "cpms/rd/directory.h"

#include <algorithm>

#include "cpms/common/error.h"
#include "cpms/semantic/turtle.h"

namespace cpms::rd {

semantic::Term EndpointContext(std::string_view endpoint) {
  return semantic::Term::Iri("urn:ep:" + std::string(endpoint));
}

Directory::RegisterResult Directory::Register(const std::string& endpoint, int64_t lifetime_s,
                                              const coap::Address& source,
                                              std::vector<LinkEntry> links) {
  if (endpoint.empty()) throw Error(ErrorCode::kRejectedRegistration, "missing endpoint name");
  if (lifetime_s <= 0) throw Error(ErrorCode::kRejectedRegistration, "lifetime must be positive");
  std::lock_guard lock(write_mu_);
  double now = clock_.Now();
  SweepLocked(now);
  auto entries = entries_;
  RegisterResult result;
  auto it = entries.find(endpoint);
  if (it == entries.end()) {
    RegistrationEntry entry;
    entry.endpoint_name = endpoint;
    entry.location = "/rd/" + std::to_string(next_location_++);
    it = entries.emplace(endpoint, std::move(entry)).first;
    result.created = true;
  }
  it->second.source = source;
  it->second.lifetime_s = lifetime_s;
  it->second.links = std::move(links);
  it->second.last_refresh = now;
  result.location = it->second.location;
  Publish(std::move(entries));
  return result;
}

void Directory::PutDescription(const std::string& endpoint, semantic::Graph description) {
  std::lock_guard lock(write_mu_);
  SweepLocked(clock_.Now());
  auto entries = entries_;
  auto it = entries.find(endpoint);
  if (it == entries.end()) throw Error(ErrorCode::kUnknownEndpoint, endpoint);
  it->second.description = std::move(description);
  Publish(std::move(entries));
}

void Directory::PutDescription(const std::string& endpoint, std::string_view turtle) {
  PutDescription(endpoint, semantic::ParseTurtle(turtle));
}

std::map<std::string, RegistrationEntry>::iterator Directory::FindLocation(
    std::map<std::string, RegistrationEntry>& entries, const std::string& location) {
  return std::find_if(entries.begin(), entries.end(),
                      [&](const auto& e) { return e.second.location == location; });
}

void Directory::Update(const std::string& location, std::optional<int64_t> lifetime_s) {
  if (lifetime_s && *lifetime_s <= 0) {
    throw Error(ErrorCode::kRejectedRegistration, "lifetime must be positive");
  }
  std::lock_guard lock(write_mu_);
  double now = clock_.Now();
  SweepLocked(now);
  auto entries = entries_;
  auto it = FindLocation(entries, location);
  if (it == entries.end()) throw Error(ErrorCode::kUnknownEndpoint, location);
  it->second.last_refresh = now;
  if (lifetime_s) it->second.lifetime_s = *lifetime_s;
  Publish(std::move(entries));
}

bool Directory::Remove(const std::string& location) {
  std::lock_guard lock(write_mu_);
  auto entries = entries_;
  auto it = FindLocation(entries, location);
  if (it == entries.end()) return false;
  entries.erase(it);
  Publish(std::move(entries));
  return true;
}

std::vector<LinkMatch> Directory::LookupLinks(const LinkFilter& filter) {
  ExpireSweep();
  auto snapshot = Current();
  std::vector<LinkMatch> out;
  for (const auto& [name, entry] : snapshot->entries) {
    if (filter.endpoint && *filter.endpoint != name) continue;
    for (const auto& link : entry.links) {
      if (filter.resource_type && link.Attribute("rt") != filter.resource_type) continue;
      if (filter.interface && link.Attribute("if") != filter.interface) continue;
      out.push_back(LinkMatch{name, entry.source, link});
    }
  }
  return out;
}

std::vector<SemanticMatch> Directory::LookupSemantic(std::string_view query_text) {
  semantic::Query query;
  try {
    query = semantic::ParseQuery(query_text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadQuery, e.what());
  }
  return LookupSemantic(query);
}

std::vector<SemanticMatch> Directory::LookupSemantic(const semantic::Query& query) {
  ExpireSweep();
  auto snapshot = Current();
  std::vector<SemanticMatch> out;
  for (auto& solution : semantic::EvaluateNamed(snapshot->dataset, query)) {
    std::string name = solution.context.value.substr(std::string_view("urn:ep:").size());
    out.push_back(SemanticMatch{std::move(name), std::move(solution.binding)});
  }
  return out;
}

std::vector<std::string> Directory::ExpireSweep() { return ExpireSweep(clock_.Now()); }

std::vector<std::string> Directory::ExpireSweep(double now) {
  std::lock_guard lock(write_mu_);
  return SweepLocked(now);
}

std::vector<std::string> Directory::SweepLocked(double now) {
  std::vector<std::string> removed;
  for (const auto& [name, entry] : entries_) {
    if (now - entry.last_refresh > static_cast<double>(entry.lifetime_s)) removed.push_back(name);
  }
  if (removed.empty()) return removed;
  auto entries = entries_;
  for (const auto& name : removed) entries.erase(name);
  Publish(std::move(entries));
  return removed;
}

std::optional<RegistrationEntry> Directory::Find(const std::string& endpoint) {
  ExpireSweep();
  auto snapshot = Current();
  auto it = snapshot->entries.find(endpoint);
  if (it == snapshot->entries.end()) return std::nullopt;
  return it->second;
}

std::vector<RegistrationEntry> Directory::Entries() {
  ExpireSweep();
  auto snapshot = Current();
  std::vector<RegistrationEntry> out;
  for (const auto& [name, entry] : snapshot->entries) out.push_back(entry);
  return out;
}

std::shared_ptr<const Directory::Snapshot> Directory::Current() {
  std::lock_guard lock(snapshot_mu_);
  return snapshot_;
}

void Directory::Publish(std::map<std::string, RegistrationEntry> entries) {
  auto next = std::make_shared<Snapshot>();
  next->entries = entries;
  for (const auto& [name, entry] : entries) {
    next->dataset.Add(EndpointContext(name), entry.description);
  }
  entries_ = std::move(entries);
  std::lock_guard lock(snapshot_mu_);
  snapshot_ = std::move(next);
}

}  // namespace cpms::rd
