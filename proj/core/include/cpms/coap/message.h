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

#ifndef CPMS_COAP_MESSAGE_H_
#define CPMS_COAP_MESSAGE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpms::coap {

using Bytes = std::vector<uint8_t>;

enum class MessageType : uint8_t {
  kConfirmable = 0,
  kNonConfirmable = 1,
  kAcknowledgement = 2,
  kReset = 3,
};

// Method or response code, "c.dd".
struct Code {
  uint8_t cls = 0;     // 0-7
  uint8_t detail = 0;  // 0-31

  constexpr uint8_t raw() const {
    return static_cast<uint8_t>((cls << 5) | (detail & 0x1f));
  }
  static constexpr Code FromRaw(uint8_t raw) {
    return Code{static_cast<uint8_t>(raw >> 5), static_cast<uint8_t>(raw & 0x1f)};
  }
  constexpr bool IsRequest() const { return cls == 0 && detail != 0; }
  constexpr bool IsEmpty() const { return cls == 0 && detail == 0; }
  constexpr bool IsSuccess() const { return cls == 2; }

  friend constexpr bool operator==(Code, Code) = default;
  std::string ToString() const;
};

namespace codes {
inline constexpr Code kEmpty{0, 0};
inline constexpr Code kGet{0, 1};
inline constexpr Code kPost{0, 2};
inline constexpr Code kPut{0, 3};
inline constexpr Code kDelete{0, 4};
inline constexpr Code kCreated{2, 1};
inline constexpr Code kDeleted{2, 2};
inline constexpr Code kChanged{2, 4};
inline constexpr Code kContent{2, 5};
inline constexpr Code kBadRequest{4, 0};
inline constexpr Code kForbidden{4, 3};
inline constexpr Code kNotFound{4, 4};
inline constexpr Code kMethodNotAllowed{4, 5};
inline constexpr Code kConflict{4, 9};
inline constexpr Code kInternalServerError{5, 0};
}  // namespace codes

// The only option numbers interpreted by this stack. Anything else is
// carried through decode/encode untouched.
namespace option {
inline constexpr uint16_t kObserve = 6;
inline constexpr uint16_t kLocationPath = 8;
inline constexpr uint16_t kUriPath = 11;
inline constexpr uint16_t kContentFormat = 12;
inline constexpr uint16_t kUriQuery = 15;
}  // namespace option

namespace content_format {
inline constexpr uint32_t kTextPlain = 0;
inline constexpr uint32_t kLinkFormat = 40;
// No registered number exists for text/turtle; experimental range.
inline constexpr uint32_t kTextTurtle = 65201;
}  // namespace content_format

struct Option {
  uint16_t number = 0;
  Bytes value;

  friend bool operator==(const Option&, const Option&) = default;
};

struct CoapMessage {
  uint8_t version = 1;
  MessageType type = MessageType::kConfirmable;
  Bytes token;
  Code code;
  uint16_t message_id = 0;
  std::vector<Option> options;  // sorted by number, stable within a number
  Bytes payload;

  friend bool operator==(const CoapMessage&, const CoapMessage&) = default;

  // Inserts after any existing options with the same number.
  void AddOption(uint16_t number, Bytes value);
  void AddOption(uint16_t number, std::string_view value);
  void AddUintOption(uint16_t number, uint32_t value);
  void RemoveOptions(uint16_t number);

  std::vector<std::string> OptionStrings(uint16_t number) const;
  std::optional<uint32_t> UintOption(uint16_t number) const;

  // "/a/b" <-> Uri-Path segments.
  void SetUriPath(std::string_view path);
  std::string UriPath() const;
  void AddUriQuery(std::string_view key, std::string_view value);
  std::optional<std::string> QueryParam(std::string_view key) const;
  std::string LocationPath() const;

  std::optional<uint32_t> Observe() const { return UintOption(option::kObserve); }
  std::optional<uint32_t> ContentFormat() const {
    return UintOption(option::kContentFormat);
  }

  void SetPayload(std::string_view text);
  std::string PayloadString() const;
};

// Request skeleton with path, optional query string "k=v&k2=v2" and payload.
CoapMessage MakeRequest(Code method, std::string_view path,
                        std::string_view payload = {},
                        std::string_view query = {});

// Response skeleton; type, id and token are filled in by the endpoint.
CoapMessage MakeResponse(Code code, std::string_view payload = {},
                         std::optional<uint32_t> content_format = std::nullopt);

Bytes EncodeUint(uint32_t value);
uint32_t DecodeUint(std::span<const uint8_t> bytes);

// Wire format: 4-byte header, token, delta/length-nibble options with the
// 13/14 extended forms, 0xFF payload marker. Throws InvalidMessage.
Bytes Encode(const CoapMessage& message);

// Throws MalformedPacket.
CoapMessage Decode(std::span<const uint8_t> datagram);

}  // namespace cpms::coap

#endif  // CPMS_COAP_MESSAGE_H_
