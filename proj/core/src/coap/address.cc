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

#include "cpms/coap/address.h"

#include <arpa/inet.h>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"

namespace cpms::coap {

Address Address::Parse(std::string_view text) {
  std::string_view rest = Trim(text);
  if (rest.starts_with("coap://")) rest.remove_prefix(7);
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    rest = rest.substr(0, slash);
  }
  std::string host(rest);
  uint16_t port = kDefaultPort;
  if (auto colon = rest.rfind(':'); colon != std::string_view::npos) {
    host = std::string(rest.substr(0, colon));
    auto parsed = ParseInteger(rest.substr(colon + 1));
    if (!parsed || *parsed < 0 || *parsed > 65535) {
      throw Error(ErrorCode::kInvalidAddress, "bad port in '" + std::string(text) + "'");
    }
    port = static_cast<uint16_t>(*parsed);
  }
  if (host.empty() || host == "localhost") host = "127.0.0.1";
  in_addr addr{};
  if (inet_pton(AF_INET, host.c_str(), &addr) != 1) {
    throw Error(ErrorCode::kInvalidAddress, "bad host in '" + std::string(text) + "'");
  }
  return Address(ntohl(addr.s_addr), port);
}

Address Address::FromSockaddr(const sockaddr_in& addr) {
  return Address(ntohl(addr.sin_addr.s_addr), ntohs(addr.sin_port));
}

sockaddr_in Address::ToSockaddr() const {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(ip_);
  addr.sin_port = htons(port_);
  return addr;
}

std::string Address::ToString() const {
  return std::to_string((ip_ >> 24) & 0xff) + "." + std::to_string((ip_ >> 16) & 0xff) +
         "." + std::to_string((ip_ >> 8) & 0xff) + "." + std::to_string(ip_ & 0xff) +
         ":" + std::to_string(port_);
}

}  // namespace cpms::coap
