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

#include "cpms/lwm2m/registrar.h"

#include "cpms/common/error.h"
#include "cpms/semantic/turtle.h"

namespace cpms::lwm2m {

namespace codes = coap::codes;

Registrar::Registrar(coap::Endpoint& endpoint, coap::Address directory, std::string endpoint_name,
                     std::vector<rd::LinkEntry> links, semantic::Graph description,
                     RegistrarOptions options)
    : endpoint_(endpoint),
      directory_(directory),
      name_(std::move(endpoint_name)),
      links_(std::move(links)),
      description_(std::move(description)),
      options_(options) {}

Registrar::~Registrar() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  if (refresher_.joinable()) refresher_.join();
}

coap::CoapMessage Registrar::Call(coap::CoapMessage request) {
  try {
    return endpoint_.Request(directory_, std::move(request), options_.request);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTimeout || e.code() == ErrorCode::kResetReceived) {
      throw Error(ErrorCode::kDirectoryUnreachable, directory_.ToString() + ": " + e.what());
    }
    throw;
  }
}

std::string Registrar::Register() {
  auto request = coap::MakeRequest(codes::kPost, "/rd", rd::SerializeLinkFormat(links_),
                                   "ep=" + name_ + "&lt=" + std::to_string(options_.lifetime_s));
  request.AddUintOption(coap::option::kContentFormat, coap::content_format::kLinkFormat);
  auto response = Call(std::move(request));
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kRejectedRegistration,
                name_ + ": " + response.code.ToString() + " " + response.PayloadString());
  }
  location_ = response.LocationPath();

  auto desc = coap::MakeRequest(codes::kPost, "/rd-desc", semantic::SerializeTurtle(description_),
                                "ep=" + name_);
  desc.AddUintOption(coap::option::kContentFormat, coap::content_format::kTextTurtle);
  response = Call(std::move(desc));
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kRejectedRegistration,
                name_ + " description: " + response.code.ToString() + " " +
                    response.PayloadString());
  }
  if (options_.auto_refresh && !refresher_.joinable()) {
    refresher_ = std::thread([this] { RefreshLoop(); });
  }
  return location_;
}

void Registrar::Refresh() {
  auto response = Call(coap::MakeRequest(codes::kPost, location_));
  if (response.code == codes::kNotFound) {
    Register();
    return;
  }
  if (!response.code.IsSuccess()) {
    throw Error(ErrorCode::kRejectedRegistration, name_ + ": refresh " + response.code.ToString());
  }
}

void Registrar::Deregister() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  if (refresher_.joinable()) refresher_.join();
  if (!location_.empty()) Call(coap::MakeRequest(codes::kDelete, location_));
}

void Registrar::RefreshLoop() {
  auto period = std::chrono::duration<double>(options_.lifetime_s / 2.0);
  std::unique_lock lock(mu_);
  while (!cv_.wait_for(lock, period, [this] { return stop_; })) {
    lock.unlock();
    try {
      Refresh();
    } catch (const Error&) {
      // Try again next period; the directory may come back.
    }
    lock.lock();
  }
}

}  // namespace cpms::lwm2m
