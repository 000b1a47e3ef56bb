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

#include <random>

#include <gtest/gtest.h>

#include "cpms/coap/message.h"
#include "cpms/common/error.h"

namespace cpms::coap {
namespace {

Bytes B(std::initializer_list<int> values) {
  Bytes out;
  for (int v : values) out.push_back(static_cast<uint8_t>(v));
  return out;
}

TEST(CoapCodec, EmptyConGet) {
  CoapMessage m;
  m.type = MessageType::kConfirmable;
  m.code = codes::kGet;
  m.message_id = 0x1234;
  EXPECT_EQ(Encode(m), B({0x40, 0x01, 0x12, 0x34}));
}

TEST(CoapCodec, AckContentWithPayload) {
  CoapMessage m;
  m.type = MessageType::kAcknowledgement;
  m.code = codes::kContent;
  m.message_id = 0x0001;
  m.SetPayload("22.5");
  EXPECT_EQ(Encode(m), B({0x60, 0x45, 0x00, 0x01, 0xFF, '2', '2', '.', '5'}));
}

TEST(CoapCodec, DecodeEmptyConGet) {
  CoapMessage m = Decode(B({0x40, 0x01, 0x12, 0x34}));
  EXPECT_EQ(m.type, MessageType::kConfirmable);
  EXPECT_EQ(m.code, codes::kGet);
  EXPECT_EQ(m.message_id, 0x1234);
  EXPECT_TRUE(m.token.empty());
  EXPECT_TRUE(m.options.empty());
  EXPECT_TRUE(m.payload.empty());
}

TEST(CoapCodec, TruncatedHeader) {
  try {
    Decode(B({0x40, 0x01, 0x12}));
    FAIL() << "expected MalformedPacket";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedPacket);
  }
}

TEST(CoapCodec, UriPathNibble) {
  Bytes wire = B({0x40, 0x01, 0x00, 0x07, 0xB2, 'r', 'd'});
  CoapMessage m = Decode(wire);
  ASSERT_EQ(m.options.size(), 1u);
  EXPECT_EQ(m.options[0].number, option::kUriPath);
  EXPECT_EQ(m.options[0].value, B({'r', 'd'}));
  EXPECT_EQ(Encode(m), wire);
}

TEST(CoapCodec, ExtendedDeltaAndLength) {
  CoapMessage m;
  m.code = codes::kPost;
  m.AddOption(option::kUriPath, std::string(20, 'x'));    // length 13 + 7
  m.AddOption(300, Bytes(300, 0xAB));                      // delta, length via 14 form
  Bytes wire = Encode(m);
  EXPECT_EQ(wire[4], 0xBD);
  EXPECT_EQ(wire[5], 20 - 13);
  EXPECT_EQ(Decode(wire), m);
}

TEST(CoapCodec, RejectsBadMessages) {
  CoapMessage m;
  m.token = Bytes(9, 1);
  EXPECT_THROW(Encode(m), Error);
  EXPECT_THROW(Decode(B({0x80, 0x01, 0, 0})), Error);          // version 2
  EXPECT_THROW(Decode(B({0x49, 0x01, 0, 0})), Error);          // token length 9
  EXPECT_THROW(Decode(B({0x40, 0x01, 0, 0, 0xFF})), Error);    // marker, no payload
  EXPECT_THROW(Decode(B({0x40, 0x01, 0, 0, 0xF0})), Error);    // delta nibble 15
  EXPECT_THROW(Decode(B({0x40, 0x01, 0, 0, 0xB5, 'a'})), Error);  // truncated value
}

TEST(CoapCodec, UnknownOptionsPreserved) {
  CoapMessage m = MakeRequest(codes::kGet, "/a/b");
  m.AddOption(2048, std::string("zz"));
  CoapMessage back = Decode(Encode(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.UriPath(), "/a/b");
}

TEST(CoapMessage, Helpers) {
  CoapMessage m = MakeRequest(codes::kPost, "/rd", "payload", "ep=smartSilo4&lt=60");
  EXPECT_EQ(m.UriPath(), "/rd");
  EXPECT_EQ(m.QueryParam("ep"), "smartSilo4");
  EXPECT_EQ(m.QueryParam("lt"), "60");
  EXPECT_FALSE(m.QueryParam("x"));
  EXPECT_EQ(m.PayloadString(), "payload");
  m.AddUintOption(option::kContentFormat, 40);
  EXPECT_EQ(m.ContentFormat(), 40u);
  EXPECT_EQ(EncodeUint(0), Bytes{});
  EXPECT_EQ(EncodeUint(0x0100), B({1, 0}));
  EXPECT_EQ(DecodeUint(B({1, 0})), 0x0100u);
  EXPECT_EQ(codes::kContent.ToString(), "2.05");
}

// Walks the option area independently of Decode and checks that every
// encoded delta is non-negative and the running number matches `numbers`.
void CheckOptionLayout(const Bytes& wire, const std::vector<uint16_t>& numbers) {
  size_t pos = 4 + (wire[0] & 0x0f);
  uint32_t number = 0;
  size_t index = 0;
  auto ext = [&](uint32_t nibble) -> uint32_t {
    if (nibble == 13) return 13u + wire[pos++];
    if (nibble == 14) {
      uint32_t v = (uint32_t(wire[pos]) << 8) | wire[pos + 1];
      pos += 2;
      return 269u + v;
    }
    return nibble;
  };
  while (pos < wire.size() && wire[pos] != 0xFF) {
    uint8_t head = wire[pos++];
    ASSERT_NE(head >> 4, 15);
    uint32_t delta = ext(head >> 4);
    uint32_t length = ext(head & 0x0f);
    number += delta;
    ASSERT_LT(index, numbers.size());
    EXPECT_EQ(number, numbers[index++]);
    pos += length;
  }
  EXPECT_EQ(index, numbers.size());
}

TEST(CoapCodecProperty, RandomRoundTrip) {
  std::mt19937 rng(20240611);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int i = 0; i < 10000; ++i) {
    CoapMessage m;
    m.type = static_cast<MessageType>(pick(0, 3));
    m.code = Code{static_cast<uint8_t>(pick(0, 7)), static_cast<uint8_t>(pick(0, 31))};
    m.message_id = static_cast<uint16_t>(pick(0, 0xffff));
    m.token.resize(pick(0, 8));
    for (auto& b : m.token) b = static_cast<uint8_t>(pick(0, 255));
    int count = pick(0, 6);
    for (int k = 0; k < count; ++k) {
      uint16_t number;
      switch (pick(0, 3)) {
        case 0: number = static_cast<uint16_t>(pick(0, 15)); break;
        case 1: number = static_cast<uint16_t>(pick(0, 300)); break;
        case 2: number = static_cast<uint16_t>(pick(0, 65000)); break;
        default: number = option::kUriPath; break;
      }
      Bytes value(pick(0, k == 0 ? 400 : 20));
      for (auto& b : value) b = static_cast<uint8_t>(pick(0, 255));
      m.AddOption(number, std::move(value));
    }
    if (pick(0, 1)) {
      m.payload.resize(pick(1, 64));
      for (auto& b : m.payload) b = static_cast<uint8_t>(pick(0, 255));
    }
    Bytes wire = Encode(m);
    ASSERT_EQ(Decode(wire), m) << "iteration " << i;
    std::vector<uint16_t> numbers;
    for (const auto& o : m.options) numbers.push_back(o.number);
    CheckOptionLayout(wire, numbers);
    if (::testing::Test::HasFailure()) return;
  }
}

}  // namespace
}  // namespace cpms::coap
