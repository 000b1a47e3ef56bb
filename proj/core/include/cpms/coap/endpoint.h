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

#ifndef CPMS_COAP_ENDPOINT_H_
#define CPMS_COAP_ENDPOINT_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "cpms/coap/address.h"
#include "cpms/coap/message.h"
#include "cpms/coap/udp_socket.h"

namespace cpms::coap {

struct InboundRequest {
  Address source;
  CoapMessage message;
};

// Produces the response code/options/payload. Type, message id and token
// are filled in by the endpoint. Exceptions become 5.00.
using Handler = std::function<CoapMessage(const InboundRequest&)>;

using NotificationCallback = std::function<void(const CoapMessage&)>;

struct RequestOptions {
  // CON: initial ACK timeout, jittered by [1, random_factor], doubled on
  // every retransmission. NON: the same total span without resending.
  std::chrono::duration<double> timeout{2.0};
  int retries = 4;
  double random_factor = 1.5;
};

struct EndpointOptions {
  // How long a response stays cached for duplicate detection.
  std::chrono::duration<double> exchange_lifetime{247.0};
};

class Endpoint;

// Client-side Observe registration. Must not outlive its Endpoint.
// Destruction (or Cancel) deregisters with the server.
class Observation {
 public:
  ~Observation();
  Observation(const Observation&) = delete;
  Observation& operator=(const Observation&) = delete;

  const CoapMessage& initial_response() const { return initial_response_; }
  bool established() const { return established_; }
  void Cancel();

 private:
  friend class Endpoint;
  struct State;
  Observation(Endpoint* endpoint, std::shared_ptr<State> state,
              CoapMessage initial_response, bool established)
      : endpoint_(endpoint),
        state_(std::move(state)),
        initial_response_(std::move(initial_response)),
        established_(established) {}

  Endpoint* endpoint_;
  std::shared_ptr<State> state_;
  CoapMessage initial_response_;
  bool established_;
};

// A CoAP endpoint on one UDP socket: optional server role (handler) and
// client role (Request/Observe). Inbound datagrams are processed
// sequentially on one receive thread; Request may be called concurrently
// from any number of threads other than that receive thread.
class Endpoint {
 public:
  // Throws BindError. Port 0 binds an ephemeral port.
  static std::unique_ptr<Endpoint> Bind(const Address& address,
                                        Handler handler = nullptr,
                                        EndpointOptions options = {});
  ~Endpoint();
  Endpoint(const Endpoint&) = delete;
  Endpoint& operator=(const Endpoint&) = delete;

  const Address& address() const { return address_; }

  // Sends a CON or NON request (class 0) and waits for the response matched
  // by token. Throws Timeout, ResetReceived, InvalidMessage.
  CoapMessage Request(const Address& destination, CoapMessage request,
                      const RequestOptions& options = {});

  // GET with Observe=0; later notifications carrying the token are passed to
  // `callback` on the receive thread, stale sequence numbers dropped.
  std::unique_ptr<Observation> Observe(const Address& destination,
                                       CoapMessage request,
                                       NotificationCallback callback,
                                       const RequestOptions& options = {});

  // Fire-and-forget NON message carrying `token` (server-side notifications).
  void Notify(const Address& destination, const Bytes& token, CoapMessage message);

  uint64_t handler_invocations() const { return handler_invocations_.load(); }

 private:
  friend class Observation;
  struct Pending;
  struct CachedResponse {
    Bytes datagram;
    double expires;
  };

  Endpoint(UdpSocket socket, Handler handler, EndpointOptions options);

  void Loop();
  void Process(UdpSocket::Datagram datagram);
  void HandleRequest(const Address& source, CoapMessage request);
  void HandleResponse(const Address& source, CoapMessage response);
  void SendEmpty(const Address& destination, MessageType type, uint16_t message_id);
  void Deregister(const std::shared_ptr<Observation::State>& state);
  uint16_t NextMessageId(const Address& destination);
  Bytes NewToken();
  double Now() const;

  UdpSocket socket_;
  Address address_;
  Handler handler_;
  EndpointOptions options_;
  int wake_fd_ = -1;
  std::atomic<bool> stop_{false};
  std::atomic<uint64_t> next_token_;
  std::atomic<uint64_t> handler_invocations_{0};
  std::chrono::steady_clock::time_point origin_;

  std::mutex mu_;
  std::map<Bytes, std::shared_ptr<Pending>> pending_;
  std::map<uint16_t, Bytes> pending_by_mid_;
  std::map<Bytes, std::shared_ptr<Observation::State>> observations_;
  std::map<Address, uint16_t> next_mid_;

  // Touched only by the receive thread.
  std::map<std::pair<Address, uint16_t>, CachedResponse> response_cache_;
  std::deque<std::pair<double, std::pair<Address, uint16_t>>> cache_order_;

  std::thread loop_;
};

// Binds and starts a server endpoint. Throws BindError.
inline std::unique_ptr<Endpoint> Serve(const Address& bind_address, Handler handler,
                                       EndpointOptions options = {}) {
  return Endpoint::Bind(bind_address, std::move(handler), options);
}

// True for 2.xx responses.
inline bool IsSuccess(const CoapMessage& response) { return response.code.IsSuccess(); }

}  // namespace cpms::coap

#endif  // CPMS_COAP_ENDPOINT_H_
