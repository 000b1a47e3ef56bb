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

#include "cpms/rd/client.h"

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/semantic/turtle.h"

namespace cpms::rd {

namespace codes = coap::codes;

coap::CoapMessage CoapDirectoryClient::Call(coap::CoapMessage request) {
  try {
    return endpoint_.Request(directory_, std::move(request), options_);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTimeout || e.code() == ErrorCode::kResetReceived) {
      throw Error(ErrorCode::kDirectoryUnreachable, directory_.ToString() + ": " + e.what());
    }
    throw;
  }
}

std::vector<LinkMatch> CoapDirectoryClient::LookupLinks(const LinkFilter& filter) {
  std::map<std::string, std::string> query;
  if (filter.endpoint) query["ep"] = *filter.endpoint;
  if (filter.resource_type) query["rt"] = *filter.resource_type;
  if (filter.interface) query["if"] = *filter.interface;
  auto response = Call(coap::MakeRequest(codes::kGet, "/rd-lookup/res", {}, FormatArgs(query)));
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kDirectoryUnreachable,
                "lookup failed: " + response.code.ToString() + " " + response.PayloadString());
  }
  std::vector<LinkMatch> out;
  for (auto& link : ParseLinkFormat(response.PayloadString())) {
    LinkMatch match;
    auto anchor = link.Attribute("anchor");
    auto ep = link.Attribute("ep");
    if (!anchor || !ep) throw Error(ErrorCode::kBadLinkFormat, "lookup link lacks anchor/ep");
    match.endpoint = *ep;
    match.source = coap::Address::Parse(*anchor);
    std::erase_if(link.attributes,
                  [](const auto& a) { return a.first == "anchor" || a.first == "ep"; });
    match.link = std::move(link);
    out.push_back(std::move(match));
  }
  return out;
}

std::vector<SemanticMatch> CoapDirectoryClient::LookupSemantic(std::string_view query_text) {
  auto response = Call(coap::MakeRequest(codes::kPost, "/rd-lookup/sem", query_text));
  if (response.code == codes::kBadRequest) {
    throw Error(ErrorCode::kBadQuery, response.PayloadString());
  }
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kDirectoryUnreachable,
                "semantic lookup failed: " + response.code.ToString());
  }
  return ParseSemanticResults(response.PayloadString());
}

std::optional<semantic::Graph> CoapDirectoryClient::Description(const std::string& endpoint) {
  auto response = Call(coap::MakeRequest(codes::kGet, "/rd-desc", {}, "ep=" + endpoint));
  if (response.code == codes::kNotFound) return std::nullopt;
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kDirectoryUnreachable, "description fetch failed");
  }
  return semantic::ParseTurtle(response.PayloadString());
}

std::optional<semantic::Graph> LocalDirectoryClient::Description(const std::string& endpoint) {
  auto entry = directory_.Find(endpoint);
  if (!entry) return std::nullopt;
  return entry->description;
}

std::vector<SemanticMatch> ParseSemanticResults(std::string_view body) {
  std::vector<SemanticMatch> out;
  for (const auto& line : Split(body, '\n')) {
    if (Trim(line).empty()) continue;
    auto fields = Split(line, '\t');
    SemanticMatch match;
    match.endpoint = fields[0];
    for (size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kBadQuery, "bad result field");
      match.binding.emplace(fields[i].substr(0, eq),
                            semantic::ParseTerm(std::string_view(fields[i]).substr(eq + 1)));
    }
    out.push_back(std::move(match));
  }
  return out;
}

}  // namespace cpms::rd
