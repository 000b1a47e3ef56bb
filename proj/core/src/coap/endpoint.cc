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

#include "cpms/coap/endpoint.h"

#include <poll.h>
#include <sys/eventfd.h>
#include <unistd.h>

#include <random>

#include "cpms/common/error.h"

namespace cpms::coap {

struct Endpoint::Pending {
  std::condition_variable cv;
  std::optional<CoapMessage> response;
  bool reset = false;
  bool acked = false;
};

struct Observation::State {
  Address destination;
  Bytes token;
  CoapMessage deregister;
  NotificationCallback callback;
  std::optional<uint32_t> last_sequence;
  std::recursive_mutex callback_mu;
  bool active = true;
};

namespace {

double Jitter(double factor) {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  if (factor <= 1.0) return 1.0;
  return std::uniform_real_distribution<double>(1.0, factor)(rng);
}

// RFC 7641 freshness: is `incoming` newer than `last`?
bool IsFresher(uint32_t incoming, uint32_t last) {
  constexpr uint32_t kHalf = 1u << 23;
  return (last < incoming && incoming - last < kHalf) ||
         (last > incoming && last - incoming > kHalf);
}

}  // namespace

Observation::~Observation() { Cancel(); }

void Observation::Cancel() {
  if (!state_) return;
  {
    std::lock_guard lock(state_->callback_mu);
    if (!state_->active) return;
    state_->active = false;
  }
  endpoint_->Deregister(state_);
}

std::unique_ptr<Endpoint> Endpoint::Bind(const Address& address, Handler handler,
                                         EndpointOptions options) {
  UdpSocket socket = UdpSocket::Bind(address);
  return std::unique_ptr<Endpoint>(
      new Endpoint(std::move(socket), std::move(handler), options));
}

Endpoint::Endpoint(UdpSocket socket, Handler handler, EndpointOptions options)
    : socket_(std::move(socket)),
      address_(socket_.local_address()),
      handler_(std::move(handler)),
      options_(options),
      next_token_(std::random_device{}()),
      origin_(std::chrono::steady_clock::now()) {
  wake_fd_ = ::eventfd(0, EFD_CLOEXEC | EFD_NONBLOCK);
  loop_ = std::thread([this] { Loop(); });
}

Endpoint::~Endpoint() {
  stop_ = true;
  uint64_t one = 1;
  if (::write(wake_fd_, &one, sizeof(one)) < 0) {
    // The loop still exits on its next poll timeout.
  }
  if (loop_.joinable()) loop_.join();
  ::close(wake_fd_);
}

double Endpoint::Now() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - origin_)
      .count();
}

uint16_t Endpoint::NextMessageId(const Address& destination) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = next_mid_.try_emplace(destination, 0);
  if (inserted) {
    it->second = static_cast<uint16_t>(std::random_device{}());
  }
  return it->second++;
}

Bytes Endpoint::NewToken() {
  uint64_t value = next_token_.fetch_add(1);
  Bytes token(4);
  for (int i = 0; i < 4; ++i) token[i] = static_cast<uint8_t>(value >> (8 * (3 - i)));
  return token;
}

CoapMessage Endpoint::Request(const Address& destination, CoapMessage request,
                              const RequestOptions& options) {
  if (!request.code.IsRequest()) {
    throw Error(ErrorCode::kInvalidMessage, "not a request code: " + request.code.ToString());
  }
  if (request.type != MessageType::kConfirmable &&
      request.type != MessageType::kNonConfirmable) {
    throw Error(ErrorCode::kInvalidMessage, "requests must be CON or NON");
  }
  if (request.token.empty()) request.token = NewToken();
  request.message_id = NextMessageId(destination);
  const Bytes datagram = Encode(request);
  const bool confirmable = request.type == MessageType::kConfirmable;

  auto pending = std::make_shared<Pending>();
  std::unique_lock lock(mu_);
  pending_[request.token] = pending;
  pending_by_mid_[request.message_id] = request.token;
  auto cleanup = [&] {
    pending_.erase(request.token);
    pending_by_mid_.erase(request.message_id);
  };

  socket_.SendTo(destination, datagram);
  double wait = options.timeout.count() * (confirmable ? Jitter(options.random_factor) : 1.0);
  double deadline_total = 0;
  if (!confirmable) {
    for (int i = 0; i <= options.retries; ++i) deadline_total += options.timeout.count() * (1 << i);
    wait = deadline_total;
  }
  int attempt = 0;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(wait);
  while (true) {
    pending->cv.wait_until(lock, deadline, [&] { return pending->response || pending->reset; });
    if (pending->response) {
      CoapMessage response = std::move(*pending->response);
      cleanup();
      return response;
    }
    if (pending->reset) {
      cleanup();
      throw Error(ErrorCode::kResetReceived, "reset by " + destination.ToString());
    }
    if (std::chrono::steady_clock::now() < deadline) continue;
    if (!confirmable || pending->acked || attempt >= options.retries) break;
    ++attempt;
    wait *= 2;
    deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(wait);
    socket_.SendTo(destination, datagram);
  }
  cleanup();
  throw Error(ErrorCode::kTimeout, "no response from " + destination.ToString() + " for " +
                                       request.UriPath());
}

std::unique_ptr<Observation> Endpoint::Observe(const Address& destination,
                                               CoapMessage request,
                                               NotificationCallback callback,
                                               const RequestOptions& options) {
  request.RemoveOptions(option::kObserve);
  request.AddUintOption(option::kObserve, 0);
  if (request.token.empty()) request.token = NewToken();

  auto state = std::make_shared<Observation::State>();
  state->destination = destination;
  state->token = request.token;
  state->callback = std::move(callback);
  state->deregister = request;
  state->deregister.type = MessageType::kNonConfirmable;
  state->deregister.RemoveOptions(option::kObserve);
  state->deregister.AddUintOption(option::kObserve, 1);
  state->deregister.payload.clear();
  {
    std::lock_guard lock(mu_);
    observations_[state->token] = state;
  }
  CoapMessage response;
  try {
    response = Request(destination, request, options);
  } catch (...) {
    std::lock_guard lock(mu_);
    observations_.erase(state->token);
    throw;
  }
  bool established = response.code.IsSuccess() && response.Observe().has_value();
  if (!established) {
    std::lock_guard lock(mu_);
    observations_.erase(state->token);
    state->active = false;
  }
  return std::unique_ptr<Observation>(
      new Observation(this, std::move(state), std::move(response), established));
}

void Endpoint::Deregister(const std::shared_ptr<Observation::State>& state) {
  bool known;
  {
    std::lock_guard lock(mu_);
    known = observations_.erase(state->token) > 0;
  }
  if (!known) return;
  CoapMessage msg = state->deregister;
  msg.message_id = NextMessageId(state->destination);
  socket_.SendTo(state->destination, Encode(msg));
}

void Endpoint::Notify(const Address& destination, const Bytes& token, CoapMessage message) {
  message.type = MessageType::kNonConfirmable;
  message.token = token;
  message.message_id = NextMessageId(destination);
  socket_.SendTo(destination, Encode(message));
}

void Endpoint::SendEmpty(const Address& destination, MessageType type, uint16_t message_id) {
  CoapMessage msg;
  msg.type = type;
  msg.code = codes::kEmpty;
  msg.message_id = message_id;
  socket_.SendTo(destination, Encode(msg));
}

void Endpoint::Loop() {
  pollfd fds[2] = {{socket_.fd(), POLLIN, 0}, {wake_fd_, POLLIN, 0}};
  while (!stop_) {
    int ready = ::poll(fds, 2, 1000);
    if (stop_) break;
    if (ready <= 0) continue;
    if (fds[0].revents & POLLIN) {
      // Drain everything that is queued before polling again.
      while (auto datagram = socket_.TryReceive()) {
        Process(std::move(*datagram));
        if (stop_) return;
      }
    }
  }
}

void Endpoint::Process(UdpSocket::Datagram datagram) {
  CoapMessage msg;
  try {
    msg = Decode(datagram.data);
  } catch (const Error&) {
    return;
  }
  if (msg.code.IsRequest()) {
    HandleRequest(datagram.source, std::move(msg));
    return;
  }
  if (msg.code.IsEmpty()) {
    if (msg.type == MessageType::kConfirmable) {
      SendEmpty(datagram.source, MessageType::kReset, msg.message_id);
      return;
    }
    std::lock_guard lock(mu_);
    auto mid = pending_by_mid_.find(msg.message_id);
    if (mid == pending_by_mid_.end()) return;
    auto it = pending_.find(mid->second);
    if (it == pending_.end()) return;
    if (msg.type == MessageType::kReset) it->second->reset = true;
    if (msg.type == MessageType::kAcknowledgement) it->second->acked = true;
    it->second->cv.notify_all();
    return;
  }
  HandleResponse(datagram.source, std::move(msg));
}

void Endpoint::HandleRequest(const Address& source, CoapMessage request) {
  const double now = Now();
  while (!cache_order_.empty() && cache_order_.front().first <= now) {
    auto key = cache_order_.front().second;
    auto it = response_cache_.find(key);
    if (it != response_cache_.end() && it->second.expires <= now) response_cache_.erase(it);
    cache_order_.pop_front();
  }
  auto key = std::make_pair(source, request.message_id);
  if (auto cached = response_cache_.find(key); cached != response_cache_.end()) {
    socket_.SendTo(source, cached->second.datagram);
    return;
  }

  CoapMessage response;
  if (handler_) {
    handler_invocations_.fetch_add(1);
    try {
      response = handler_(InboundRequest{source, request});
    } catch (const std::exception& e) {
      response = MakeResponse(codes::kInternalServerError, e.what());
    } catch (...) {
      response = MakeResponse(codes::kInternalServerError, "handler failed");
    }
  } else {
    response = MakeResponse(codes::kNotFound);
  }
  response.version = 1;
  response.token = request.token;
  if (request.type == MessageType::kConfirmable) {
    response.type = MessageType::kAcknowledgement;
    response.message_id = request.message_id;
  } else {
    response.type = MessageType::kNonConfirmable;
    response.message_id = NextMessageId(source);
  }
  Bytes datagram;
  try {
    datagram = Encode(response);
  } catch (const Error& e) {
    CoapMessage fallback = MakeResponse(codes::kInternalServerError, e.what());
    fallback.token = response.token;
    fallback.type = response.type;
    fallback.message_id = response.message_id;
    datagram = Encode(fallback);
  }
  socket_.SendTo(source, datagram);
  double expires = now + options_.exchange_lifetime.count();
  response_cache_[key] = CachedResponse{datagram, expires};
  cache_order_.emplace_back(expires, key);
}

void Endpoint::HandleResponse(const Address& source, CoapMessage response) {
  const bool confirmable = response.type == MessageType::kConfirmable;
  const uint16_t message_id = response.message_id;
  std::shared_ptr<Observation::State> observation;
  bool delivered = false;
  {
    std::lock_guard lock(mu_);
    auto obs = observations_.find(response.token);
    auto it = pending_.find(response.token);
    if (it != pending_.end() && !it->second->response) {
      if (obs != observations_.end()) obs->second->last_sequence = response.Observe();
      it->second->response = std::move(response);
      it->second->cv.notify_all();
      delivered = true;
    } else if (obs != observations_.end()) {
      auto sequence = response.Observe();
      auto& last = obs->second->last_sequence;
      if (!sequence || !last || IsFresher(*sequence, *last)) {
        if (sequence) last = sequence;
        observation = obs->second;
      }
    } else {
      if (confirmable) SendEmpty(source, MessageType::kReset, message_id);
      return;
    }
  }
  if (confirmable) SendEmpty(source, MessageType::kAcknowledgement, message_id);
  if (delivered || !observation) return;

  std::lock_guard callback_lock(observation->callback_mu);
  if (observation->active && observation->callback) observation->callback(response);
}

}  // namespace cpms::coap
