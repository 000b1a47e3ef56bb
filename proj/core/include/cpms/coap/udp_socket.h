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

#ifndef CPMS_COAP_UDP_SOCKET_H_
#define CPMS_COAP_UDP_SOCKET_H_

#include <chrono>
#include <optional>
#include <span>

#include "cpms/coap/address.h"
#include "cpms/coap/message.h"

namespace cpms::coap {

// Owning IPv4 datagram socket.
class UdpSocket {
 public:
  // Throws BindError.
  static UdpSocket Bind(const Address& address);

  UdpSocket(UdpSocket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  ~UdpSocket();

  int fd() const { return fd_; }
  Address local_address() const;

  void SendTo(const Address& destination, std::span<const uint8_t> data) const;

  struct Datagram {
    Address source;
    Bytes data;
  };
  // Blocks for at most `timeout`; nullopt on timeout.
  std::optional<Datagram> Receive(std::chrono::duration<double> timeout) const;
  // Non-blocking read of one pending datagram.
  std::optional<Datagram> TryReceive() const;

 private:
  explicit UdpSocket(int fd) : fd_(fd) {}
  int fd_ = -1;
};

}  // namespace cpms::coap

#endif  // CPMS_COAP_UDP_SOCKET_H_
