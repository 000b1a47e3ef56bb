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

#ifndef CPMS_RD_DIRECTORY_H_
#define CPMS_RD_DIRECTORY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/coap/address.h"
#include "cpms/common/clock.h"
#include "cpms/rd/link_format.h"
#include "cpms/semantic/graph.h"
#include "cpms/semantic/query.h"

namespace cpms::rd {

inline constexpr int64_t kDefaultLifetime = 86400;

struct RegistrationEntry {
  std::string endpoint_name;
  coap::Address source;
  std::string location;  // "/rd/3"
  int64_t lifetime_s = kDefaultLifetime;
  std::vector<LinkEntry> links;
  semantic::Graph description;
  double last_refresh = 0;
};

struct LinkFilter {
  std::optional<std::string> endpoint;
  std::optional<std::string> resource_type;  // rt
  std::optional<std::string> interface;      // if
};

struct LinkMatch {
  std::string endpoint;
  coap::Address source;
  LinkEntry link;

  friend bool operator==(const LinkMatch&, const LinkMatch&) = default;
};

struct SemanticMatch {
  std::string endpoint;
  semantic::Binding binding;

  friend bool operator==(const SemanticMatch&, const SemanticMatch&) = default;
};

// Context IRI under which an endpoint's description is queried.
semantic::Term EndpointContext(std::string_view endpoint);

// Registry of endpoints, their links and description graphs. Mutations are
// serialized; lookups read an immutable snapshot that is replaced as a
// whole after every mutation. Entries whose age exceeds their lifetime
// (strictly) are swept before each lookup.
class Directory {
 public:
  explicit Directory(const Clock& clock) : clock_(clock) {}

  struct RegisterResult {
    std::string location;
    bool created = false;
  };

  // Same endpoint name replaces links/source/lifetime and keeps location
  // and description. Throws RejectedRegistration for lifetime <= 0 or an
  // empty name.
  RegisterResult Register(const std::string& endpoint, int64_t lifetime_s,
                          const coap::Address& source, std::vector<LinkEntry> links);
  // Throws UnknownEndpoint.
  void PutDescription(const std::string& endpoint, semantic::Graph description);
  // Throws UnknownEndpoint, SyntaxError, UnknownPrefix.
  void PutDescription(const std::string& endpoint, std::string_view turtle);
  // Refreshes the entry at `location`. Throws UnknownEndpoint.
  void Update(const std::string& location, std::optional<int64_t> lifetime_s = std::nullopt);
  // False when no entry lives at `location`.
  bool Remove(const std::string& location);

  std::vector<LinkMatch> LookupLinks(const LinkFilter& filter);
  // Throws BadQuery when the text does not parse.
  std::vector<SemanticMatch> LookupSemantic(std::string_view query_text);
  std::vector<SemanticMatch> LookupSemantic(const semantic::Query& query);

  // Removes entries with now - last_refresh > lifetime. Returns their names.
  std::vector<std::string> ExpireSweep();
  std::vector<std::string> ExpireSweep(double now);

  std::optional<RegistrationEntry> Find(const std::string& endpoint);
  std::vector<RegistrationEntry> Entries();

 private:
  struct Snapshot {
    std::map<std::string, RegistrationEntry> entries;  // by endpoint name
    semantic::Dataset dataset;
  };

  std::shared_ptr<const Snapshot> Current();
  // Callers hold write_mu_.
  void Publish(std::map<std::string, RegistrationEntry> entries);
  std::vector<std::string> SweepLocked(double now);
  std::map<std::string, RegistrationEntry>::iterator FindLocation(
      std::map<std::string, RegistrationEntry>& entries, const std::string& location);

  const Clock& clock_;
  std::mutex write_mu_;
  std::map<std::string, RegistrationEntry> entries_;  // guarded by write_mu_
  uint64_t next_location_ = 1;                        // guarded by write_mu_
  std::mutex snapshot_mu_;
  std::shared_ptr<const Snapshot> snapshot_ = std::make_shared<Snapshot>();
};

}  // namespace cpms::rd

#endif  // CPMS_RD_DIRECTORY_H_
