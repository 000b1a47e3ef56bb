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

#ifndef CPMS_RD_SERVER_H_
#define CPMS_RD_SERVER_H_

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <thread>

#include "cpms/coap/endpoint.h"
#include "cpms/common/clock.h"
#include "cpms/rd/directory.h"

namespace cpms::rd {

// CoAP face of a Directory:
//   POST   /rd?ep=NAME[&lt=S][&base=coap://h:p]  link-format  -> 2.01 (2.04 on re-register)
//   POST   /rd-desc?ep=NAME                     text/turtle  -> 2.04
//   GET    /rd-desc?ep=NAME                                  -> 2.05 text/turtle
//   POST   /rd/N[?lt=S]                                      -> 2.04
//   DELETE /rd/N                                             -> 2.02
//   GET    /rd-lookup/res[?rt=&if=&ep=]                      -> 2.05 link-format
//   GET    /rd-lookup/ep[?ep=]                               -> 2.05 link-format
//   POST   /rd-lookup/sem                       query text   -> 2.05 "ep\tvar=term..." lines
coap::CoapMessage HandleDirectoryRequest(Directory& directory, const coap::InboundRequest& request);

class RdServer {
 public:
  struct Options {
    // Period of the background expiry sweep; zero disables it.
    std::chrono::duration<double> sweep_interval{1.0};
  };

  // Throws BindError.
  static std::unique_ptr<RdServer> Start(const coap::Address& bind, const Clock& clock,
                                         Options options);
  static std::unique_ptr<RdServer> Start(const coap::Address& bind, const Clock& clock) {
    return Start(bind, clock, Options{});
  }
  ~RdServer();

  const coap::Address& address() const { return endpoint_->address(); }
  Directory& directory() { return directory_; }

 private:
  RdServer(const Clock& clock, Options options) : directory_(clock), options_(options) {}
  void SweepLoop();

  Directory directory_;
  Options options_;
  std::unique_ptr<coap::Endpoint> endpoint_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool stop_ = false;
  std::thread sweeper_;
};

}  // namespace cpms::rd

#endif  // CPMS_RD_SERVER_H_
