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

#ifndef CPMS_RD_CLIENT_H_
#define CPMS_RD_CLIENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/rd/directory.h"

namespace cpms::rd {

// Read side of a resource directory, local or remote.
class DirectoryClient {
 public:
  virtual ~DirectoryClient() = default;

  virtual std::vector<LinkMatch> LookupLinks(const LinkFilter& filter) = 0;
  // Throws BadQuery.
  virtual std::vector<SemanticMatch> LookupSemantic(std::string_view query_text) = 0;
  virtual std::optional<semantic::Graph> Description(const std::string& endpoint) = 0;
};

// Talks to an RdServer. Transport failures surface as DirectoryUnreachable.
class CoapDirectoryClient final : public DirectoryClient {
 public:
  CoapDirectoryClient(coap::Endpoint& endpoint, coap::Address directory,
                      coap::RequestOptions options = {})
      : endpoint_(endpoint), directory_(directory), options_(options) {}

  std::vector<LinkMatch> LookupLinks(const LinkFilter& filter) override;
  std::vector<SemanticMatch> LookupSemantic(std::string_view query_text) override;
  std::optional<semantic::Graph> Description(const std::string& endpoint) override;

  const coap::Address& directory() const { return directory_; }

 private:
  coap::CoapMessage Call(coap::CoapMessage request);

  coap::Endpoint& endpoint_;
  coap::Address directory_;
  coap::RequestOptions options_;
};

class LocalDirectoryClient final : public DirectoryClient {
 public:
  explicit LocalDirectoryClient(Directory& directory) : directory_(directory) {}

  std::vector<LinkMatch> LookupLinks(const LinkFilter& filter) override {
    return directory_.LookupLinks(filter);
  }
  std::vector<SemanticMatch> LookupSemantic(std::string_view query_text) override {
    return directory_.LookupSemantic(query_text);
  }
  std::optional<semantic::Graph> Description(const std::string& endpoint) override;

 private:
  Directory& directory_;
};

// Parses the /rd-lookup/sem response body.
std::vector<SemanticMatch> ParseSemanticResults(std::string_view body);

}  // namespace cpms::rd

#endif  // CPMS_RD_CLIENT_H_
