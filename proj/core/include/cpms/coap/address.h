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

#ifndef CPMS_COAP_ADDRESS_H_
#define CPMS_COAP_ADDRESS_H_

#include <netinet/in.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cpms::coap {

inline constexpr uint16_t kDefaultPort = 5683;

// IPv4 UDP endpoint address.
class Address {
 public:
  Address() = default;
  Address(uint32_t ipv4_host_order, uint16_t port) : ip_(ipv4_host_order), port_(port) {}

  // Accepts "host:port", "host", "coap://host:port[/...]"; host is a dotted
  // quad or "localhost". Throws InvalidAddress.
  static Address Parse(std::string_view text);
  static Address FromSockaddr(const sockaddr_in& addr);

  sockaddr_in ToSockaddr() const;
  std::string ToString() const;  // "127.0.0.1:5683"
  std::string ToUri() const { return "coap://" + ToString(); }

  uint32_t ip() const { return ip_; }
  uint16_t port() const { return port_; }

  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  uint32_t ip_ = 0;
  uint16_t port_ = 0;
};

}  // namespace cpms::coap

#endif  // CPMS_COAP_ADDRESS_H_
