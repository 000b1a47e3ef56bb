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

#ifndef CPMS_LWM2M_REGISTRAR_H_
#define CPMS_LWM2M_REGISTRAR_H_

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cpms/coap/endpoint.h"
#include "cpms/rd/link_format.h"
#include "cpms/semantic/graph.h"

namespace cpms::lwm2m {

struct RegistrarOptions {
  int64_t lifetime_s = 86400;
  // Refresh at lifetime / 2 on a background thread.
  bool auto_refresh = true;
  coap::RequestOptions request;
};

// Registers an endpoint with a resource directory: POST /rd with the
// link-format list, then POST /rd-desc with the turtle description.
// Requests go out from `endpoint`, so the directory records the address
// the device serves on.
class Registrar {
 public:
  Registrar(coap::Endpoint& endpoint, coap::Address directory, std::string endpoint_name,
            std::vector<rd::LinkEntry> links, semantic::Graph description,
            RegistrarOptions options = {});
  ~Registrar();

  Registrar(const Registrar&) = delete;
  Registrar& operator=(const Registrar&) = delete;

  // Returns the location ("/rd/1"). Throws DirectoryUnreachable,
  // RejectedRegistration.
  std::string Register();
  // POST to the registration location. Re-registers when the directory
  // has forgotten the entry.
  void Refresh();
  void Deregister();

  const std::string& location() const { return location_; }

 private:
  coap::CoapMessage Call(coap::CoapMessage request);
  void RefreshLoop();

  coap::Endpoint& endpoint_;
  coap::Address directory_;
  std::string name_;
  std::vector<rd::LinkEntry> links_;
  semantic::Graph description_;
  RegistrarOptions options_;
  std::string location_;

  std::mutex mu_;
  std::condition_variable cv_;
  bool stop_ = false;
  std::thread refresher_;
};

}  // namespace cpms::lwm2m

#endif  // CPMS_LWM2M_REGISTRAR_H_
