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

#include "cpms/coap/message.h"

#include <algorithm>
#include <cstdio>

#include "cpms/common/error.h"

namespace cpms::coap {
namespace {

constexpr uint8_t kPayloadMarker = 0xFF;

// Nibble plus extension bytes for an option delta or length.
void AppendExtended(uint32_t value, uint8_t& nibble, Bytes& extension) {
  if (value < 13) {
    nibble = static_cast<uint8_t>(value);
  } else if (value < 269) {
    nibble = 13;
    extension.push_back(static_cast<uint8_t>(value - 13));
  } else if (value < 65805) {
    nibble = 14;
    uint32_t v = value - 269;
    extension.push_back(static_cast<uint8_t>(v >> 8));
    extension.push_back(static_cast<uint8_t>(v & 0xff));
  } else {
    throw Error(ErrorCode::kInvalidMessage,
                "option delta/length " + std::to_string(value) +
                    " not representable");
  }
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> data) : data_(data) {}

  bool empty() const { return pos_ >= data_.size(); }
  size_t remaining() const { return data_.size() - pos_; }

  uint8_t Byte(const char* what) {
    if (empty()) Fail(what);
    return data_[pos_++];
  }

  std::span<const uint8_t> Take(size_t n, const char* what) {
    if (remaining() < n) Fail(what);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  uint8_t Peek() const { return data_[pos_]; }

  [[noreturn]] static void Fail(const std::string& what) {
    throw Error(ErrorCode::kMalformedPacket, what);
  }

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

uint32_t ReadExtended(uint8_t nibble, Reader& reader) {
  switch (nibble) {
    case 13:
      return 13u + reader.Byte("truncated option extension");
    case 14: {
      uint32_t hi = reader.Byte("truncated option extension");
      uint32_t lo = reader.Byte("truncated option extension");
      return 269u + ((hi << 8) | lo);
    }
    case 15:
      Reader::Fail("reserved option nibble 15");
    default:
      return nibble;
  }
}

}  // namespace

std::string Code::ToString() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%u.%02u", cls, detail);
  return buf;
}

void CoapMessage::AddOption(uint16_t number, Bytes value) {
  auto it = std::upper_bound(
      options.begin(), options.end(), number,
      [](uint16_t n, const Option& o) { return n < o.number; });
  options.insert(it, Option{number, std::move(value)});
}

void CoapMessage::AddOption(uint16_t number, std::string_view value) {
  AddOption(number, Bytes(value.begin(), value.end()));
}

void CoapMessage::AddUintOption(uint16_t number, uint32_t value) {
  AddOption(number, EncodeUint(value));
}

void CoapMessage::RemoveOptions(uint16_t number) {
  std::erase_if(options, [number](const Option& o) { return o.number == number; });
}

std::vector<std::string> CoapMessage::OptionStrings(uint16_t number) const {
  std::vector<std::string> out;
  for (const auto& o : options) {
    if (o.number == number) out.emplace_back(o.value.begin(), o.value.end());
  }
  return out;
}

std::optional<uint32_t> CoapMessage::UintOption(uint16_t number) const {
  for (const auto& o : options) {
    if (o.number == number) return DecodeUint(o.value);
  }
  return std::nullopt;
}

void CoapMessage::SetUriPath(std::string_view path) {
  RemoveOptions(option::kUriPath);
  size_t start = 0;
  while (start <= path.size()) {
    size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) AddOption(option::kUriPath, path.substr(start, end - start));
    start = end + 1;
  }
}

std::string CoapMessage::UriPath() const {
  std::string out;
  for (const auto& segment : OptionStrings(option::kUriPath)) {
    out.push_back('/');
    out += segment;
  }
  return out.empty() ? "/" : out;
}

void CoapMessage::AddUriQuery(std::string_view key, std::string_view value) {
  std::string item(key);
  item.push_back('=');
  item += value;
  AddOption(option::kUriQuery, item);
}

std::optional<std::string> CoapMessage::QueryParam(std::string_view key) const {
  for (const auto& item : OptionStrings(option::kUriQuery)) {
    auto eq = item.find('=');
    std::string_view name = std::string_view(item).substr(0, eq);
    if (name == key) {
      return eq == std::string::npos ? std::string() : item.substr(eq + 1);
    }
  }
  return std::nullopt;
}

std::string CoapMessage::LocationPath() const {
  std::string out;
  for (const auto& segment : OptionStrings(option::kLocationPath)) {
    out.push_back('/');
    out += segment;
  }
  return out;
}

void CoapMessage::SetPayload(std::string_view text) {
  payload.assign(text.begin(), text.end());
}

std::string CoapMessage::PayloadString() const {
  return std::string(payload.begin(), payload.end());
}

CoapMessage MakeRequest(Code method, std::string_view path,
                        std::string_view payload, std::string_view query) {
  CoapMessage msg;
  msg.code = method;
  msg.SetUriPath(path);
  if (!query.empty()) {
    size_t start = 0;
    while (start < query.size()) {
      size_t end = query.find('&', start);
      if (end == std::string_view::npos) end = query.size();
      if (end > start) msg.AddOption(option::kUriQuery, query.substr(start, end - start));
      start = end + 1;
    }
  }
  msg.SetPayload(payload);
  return msg;
}

CoapMessage MakeResponse(Code code, std::string_view payload,
                         std::optional<uint32_t> content_format) {
  CoapMessage msg;
  msg.code = code;
  if (content_format) msg.AddUintOption(option::kContentFormat, *content_format);
  msg.SetPayload(payload);
  return msg;
}

Bytes EncodeUint(uint32_t value) {
  Bytes out;
  for (int shift = 24; shift >= 0; shift -= 8) {
    uint8_t b = static_cast<uint8_t>(value >> shift);
    if (!out.empty() || b != 0) out.push_back(b);
  }
  return out;
}

uint32_t DecodeUint(std::span<const uint8_t> bytes) {
  uint32_t value = 0;
  for (uint8_t b : bytes.first(std::min<size_t>(bytes.size(), 4))) {
    value = (value << 8) | b;
  }
  return value;
}

Bytes Encode(const CoapMessage& message) {
  if (message.token.size() > 8) {
    throw Error(ErrorCode::kInvalidMessage, "token longer than 8 bytes");
  }
  if (message.version != 1) {
    throw Error(ErrorCode::kInvalidMessage, "unsupported version");
  }
  if (message.code.cls > 7 || message.code.detail > 31) {
    throw Error(ErrorCode::kInvalidMessage, "code out of range");
  }
  Bytes out;
  out.reserve(4 + message.token.size() + message.payload.size() + 16);
  out.push_back(static_cast<uint8_t>((message.version << 6) |
                                     (static_cast<uint8_t>(message.type) << 4) |
                                     message.token.size()));
  out.push_back(message.code.raw());
  out.push_back(static_cast<uint8_t>(message.message_id >> 8));
  out.push_back(static_cast<uint8_t>(message.message_id & 0xff));
  out.insert(out.end(), message.token.begin(), message.token.end());

  uint32_t previous = 0;
  for (const auto& opt : message.options) {
    if (opt.number < previous) {
      throw Error(ErrorCode::kInvalidMessage, "options not sorted by number");
    }
    uint8_t delta_nibble = 0;
    uint8_t length_nibble = 0;
    Bytes delta_ext;
    Bytes length_ext;
    AppendExtended(opt.number - previous, delta_nibble, delta_ext);
    AppendExtended(static_cast<uint32_t>(opt.value.size()), length_nibble, length_ext);
    out.push_back(static_cast<uint8_t>((delta_nibble << 4) | length_nibble));
    out.insert(out.end(), delta_ext.begin(), delta_ext.end());
    out.insert(out.end(), length_ext.begin(), length_ext.end());
    out.insert(out.end(), opt.value.begin(), opt.value.end());
    previous = opt.number;
  }

  if (!message.payload.empty()) {
    out.push_back(kPayloadMarker);
    out.insert(out.end(), message.payload.begin(), message.payload.end());
  }
  return out;
}

CoapMessage Decode(std::span<const uint8_t> datagram) {
  Reader reader(datagram);
  if (datagram.size() < 4) Reader::Fail("truncated header");
  CoapMessage msg;
  uint8_t first = reader.Byte("header");
  msg.version = first >> 6;
  if (msg.version != 1) Reader::Fail("bad version");
  msg.type = static_cast<MessageType>((first >> 4) & 0x3);
  uint8_t token_length = first & 0x0f;
  if (token_length > 8) Reader::Fail("reserved token length");
  msg.code = Code::FromRaw(reader.Byte("header"));
  uint16_t hi = reader.Byte("header");
  uint16_t lo = reader.Byte("header");
  msg.message_id = static_cast<uint16_t>((hi << 8) | lo);
  auto token = reader.Take(token_length, "truncated token");
  msg.token.assign(token.begin(), token.end());

  uint32_t number = 0;
  while (!reader.empty()) {
    if (reader.Peek() == kPayloadMarker) {
      reader.Byte("marker");
      if (reader.empty()) Reader::Fail("payload marker with empty payload");
      auto rest = reader.Take(reader.remaining(), "payload");
      msg.payload.assign(rest.begin(), rest.end());
      break;
    }
    uint8_t header = reader.Byte("option");
    uint32_t delta = ReadExtended(header >> 4, reader);
    uint32_t length = ReadExtended(header & 0x0f, reader);
    number += delta;
    if (number > 0xffff) Reader::Fail("option number overflow");
    auto value = reader.Take(length, "truncated option value");
    msg.options.push_back(
        Option{static_cast<uint16_t>(number), Bytes(value.begin(), value.end())});
  }
  return msg;
}

}  // namespace cpms::coap
