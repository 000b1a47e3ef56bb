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

#include "cpms/coap/udp_socket.h"

#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "cpms/common/error.h"

namespace cpms::coap {
namespace {
constexpr size_t kMaxDatagram = 65535;
}

UdpSocket UdpSocket::Bind(const Address& address) {
  int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) {
    throw Error(ErrorCode::kBindError, std::string("socket: ") + std::strerror(errno));
  }
  sockaddr_in addr = address.ToSockaddr();
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    int err = errno;
    ::close(fd);
    throw Error(ErrorCode::kBindError,
                address.ToString() + ": " + std::strerror(err));
  }
  return UdpSocket(fd);
}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

UdpSocket::~UdpSocket() {
  if (fd_ >= 0) ::close(fd_);
}

Address UdpSocket::local_address() const {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  return Address::FromSockaddr(addr);
}

void UdpSocket::SendTo(const Address& destination, std::span<const uint8_t> data) const {
  sockaddr_in addr = destination.ToSockaddr();
  // Datagram loss is handled by the protocol layer.
  (void)::sendto(fd_, data.data(), data.size(), 0,
                 reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
}

std::optional<UdpSocket::Datagram> UdpSocket::Receive(
    std::chrono::duration<double> timeout) const {
  pollfd pfd{fd_, POLLIN, 0};
  int ms = static_cast<int>(timeout.count() * 1000.0);
  if (::poll(&pfd, 1, ms < 0 ? 0 : ms) <= 0) return std::nullopt;
  return TryReceive();
}

std::optional<UdpSocket::Datagram> UdpSocket::TryReceive() const {
  Datagram dg;
  dg.data.resize(kMaxDatagram);
  sockaddr_in from{};
  socklen_t len = sizeof(from);
  ssize_t n = ::recvfrom(fd_, dg.data.data(), dg.data.size(), MSG_DONTWAIT,
                         reinterpret_cast<sockaddr*>(&from), &len);
  if (n < 0) return std::nullopt;
  dg.data.resize(static_cast<size_t>(n));
  dg.source = Address::FromSockaddr(from);
  return dg;
}

}  // namespace cpms::coap
