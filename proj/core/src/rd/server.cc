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

#include "cpms/rd/server.h"

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/semantic/turtle.h"

namespace cpms::rd {
namespace {

using coap::CoapMessage;
using coap::MakeResponse;
namespace codes = coap::codes;
namespace content_format = coap::content_format;

CoapMessage Fail(coap::Code code, std::string_view message) {
  return MakeResponse(code, message, content_format::kTextPlain);
}

std::optional<int64_t> LifetimeParam(const CoapMessage& request) {
  auto text = request.QueryParam("lt");
  if (!text) return std::nullopt;
  auto value = ParseInteger(*text);
  if (!value || *value <= 0) throw Error(ErrorCode::kRejectedRegistration, "bad lt=" + *text);
  return *value;
}

CoapMessage Register(Directory& directory, const coap::InboundRequest& request) {
  const CoapMessage& m = request.message;
  auto ep = m.QueryParam("ep");
  if (!ep || ep->empty()) return Fail(codes::kBadRequest, "missing ep");
  coap::Address source = request.source;
  if (auto base = m.QueryParam("base")) source = coap::Address::Parse(*base);
  auto links = ParseLinkFormat(m.PayloadString());
  auto result = directory.Register(*ep, LifetimeParam(m).value_or(kDefaultLifetime), source,
                                   std::move(links));
  CoapMessage response = MakeResponse(result.created ? codes::kCreated : codes::kChanged);
  for (const auto& segment : Split(result.location.substr(1), '/')) {
    response.AddOption(coap::option::kLocationPath, segment);
  }
  return response;
}

CoapMessage LookupResources(Directory& directory, const CoapMessage& m) {
  LinkFilter filter;
  filter.endpoint = m.QueryParam("ep");
  filter.resource_type = m.QueryParam("rt");
  filter.interface = m.QueryParam("if");
  std::vector<LinkEntry> links;
  for (auto& match : directory.LookupLinks(filter)) {
    LinkEntry link = std::move(match.link);
    link.Set("anchor", match.source.ToUri());
    link.Set("ep", match.endpoint);
    links.push_back(std::move(link));
  }
  return MakeResponse(codes::kContent, SerializeLinkFormat(links), content_format::kLinkFormat);
}

CoapMessage LookupEndpoints(Directory& directory, const CoapMessage& m) {
  auto wanted = m.QueryParam("ep");
  std::vector<LinkEntry> links;
  for (const auto& entry : directory.Entries()) {
    if (wanted && *wanted != entry.endpoint_name) continue;
    LinkEntry link;
    link.uri_reference = entry.location;
    link.Set("ep", entry.endpoint_name);
    link.Set("base", entry.source.ToUri());
    link.Set("lt", std::to_string(entry.lifetime_s));
    links.push_back(std::move(link));
  }
  return MakeResponse(codes::kContent, SerializeLinkFormat(links), content_format::kLinkFormat);
}

CoapMessage LookupSemantic(Directory& directory, const CoapMessage& m) {
  std::string body;
  for (const auto& match : directory.LookupSemantic(m.PayloadString())) {
    body += match.endpoint;
    for (const auto& [name, term] : match.binding) body += "\t" + name + "=" + term.ToString();
    body += "\n";
  }
  return MakeResponse(codes::kContent, body, content_format::kTextPlain);
}

CoapMessage Route(Directory& directory, const coap::InboundRequest& request) {
  const CoapMessage& m = request.message;
  const std::string path = m.UriPath();
  const coap::Code method = m.code;

  if (path == "/rd") {
    if (method != codes::kPost) return Fail(codes::kMethodNotAllowed, "POST only");
    return Register(directory, request);
  }
  if (path == "/rd-desc") {
    auto ep = m.QueryParam("ep");
    if (!ep) return Fail(codes::kBadRequest, "missing ep");
    if (method == codes::kPost || method == codes::kPut) {
      directory.PutDescription(*ep, m.PayloadString());
      return MakeResponse(codes::kChanged);
    }
    if (method == codes::kGet) {
      auto entry = directory.Find(*ep);
      if (!entry) return Fail(codes::kNotFound, *ep);
      return MakeResponse(codes::kContent, semantic::SerializeTurtle(entry->description),
                          content_format::kTextTurtle);
    }
    return Fail(codes::kMethodNotAllowed, "GET or POST");
  }
  if (path.rfind("/rd/", 0) == 0) {
    if (method == codes::kPost) {
      directory.Update(path, LifetimeParam(m));
      return MakeResponse(codes::kChanged);
    }
    if (method == codes::kDelete) {
      if (!directory.Remove(path)) return Fail(codes::kNotFound, path);
      return MakeResponse(codes::kDeleted);
    }
    return Fail(codes::kMethodNotAllowed, "POST or DELETE");
  }
  if (path == "/rd-lookup/res") {
    if (method != codes::kGet) return Fail(codes::kMethodNotAllowed, "GET only");
    return LookupResources(directory, m);
  }
  if (path == "/rd-lookup/ep") {
    if (method != codes::kGet) return Fail(codes::kMethodNotAllowed, "GET only");
    return LookupEndpoints(directory, m);
  }
  if (path == "/rd-lookup/sem") {
    if (method != codes::kPost && method != codes::kGet) {
      return Fail(codes::kMethodNotAllowed, "POST only");
    }
    return LookupSemantic(directory, m);
  }
  return Fail(codes::kNotFound, path);
}

}  // namespace

CoapMessage HandleDirectoryRequest(Directory& directory, const coap::InboundRequest& request) {
  try {
    return Route(directory, request);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kUnknownEndpoint:
        return Fail(codes::kNotFound, e.what());
      case ErrorCode::kBadLinkFormat:
      case ErrorCode::kSyntaxError:
      case ErrorCode::kUnknownPrefix:
      case ErrorCode::kInvalidTerm:
      case ErrorCode::kBadQuery:
      case ErrorCode::kRejectedRegistration:
      case ErrorCode::kInvalidAddress:
        return Fail(codes::kBadRequest, e.what());
      default:
        throw;
    }
  }
}

std::unique_ptr<RdServer> RdServer::Start(const coap::Address& bind, const Clock& clock,
                                          Options options) {
  std::unique_ptr<RdServer> server(new RdServer(clock, options));
  RdServer* self = server.get();
  server->endpoint_ = coap::Serve(bind, [self](const coap::InboundRequest& request) {
    return HandleDirectoryRequest(self->directory_, request);
  });
  if (options.sweep_interval.count() > 0) {
    server->sweeper_ = std::thread([self] { self->SweepLoop(); });
  }
  return server;
}

RdServer::~RdServer() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  if (sweeper_.joinable()) sweeper_.join();
  endpoint_.reset();
}

void RdServer::SweepLoop() {
  std::unique_lock lock(mu_);
  while (!cv_.wait_for(lock, options_.sweep_interval, [this] { return stop_; })) {
    lock.unlock();
    directory_.ExpireSweep();
    lock.lock();
  }
}

}  // namespace cpms::rd
