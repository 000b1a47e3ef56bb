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

#include <atomic>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "cpms/common/error.h"
#include "cpms/rd/client.h"
#include "cpms/rd/server.h"
#include "cpms/semantic/turtle.h"
#include "fixture_util.h"

namespace cpms::rd {
namespace {

using cpms::testing::Fixture;
namespace codes = coap::codes;

const coap::Address kSilo = coap::Address::Parse("127.0.0.1:40001");
const coap::Address kPipe = coap::Address::Parse("127.0.0.1:40002");

std::vector<LinkEntry> Links(std::string_view text) { return ParseLinkFormat(text); }

std::string WithMaxTemp(const std::string& value) {
  std::string text = Fixture("heat_service.ttl");
  text.replace(text.find("\"70\""), 4, "\"" + value + "\"");
  return text;
}

TEST(LinkFormat, ParseAndSerialize) {
  auto links = Links("</26241/0>;rt=\"lps.silo\";ct=40, </26241/0/8>;if=\"core.a\";obs");
  ASSERT_EQ(links.size(), 2u);
  EXPECT_EQ(links[0].uri_reference, "/26241/0");
  EXPECT_EQ(links[0].Attribute("rt"), "lps.silo");
  EXPECT_EQ(links[0].Attribute("ct"), "40");
  EXPECT_EQ(links[1].Attribute("obs"), "");
  EXPECT_EQ(SerializeLinkFormat(links),
            "</26241/0>;rt=\"lps.silo\";ct=40,</26241/0/8>;if=\"core.a\";obs");
  EXPECT_EQ(ParseLinkFormat(SerializeLinkFormat(links)), links);
  EXPECT_TRUE(Links("").empty());
}

TEST(LinkFormat, Malformed) {
  for (const char* bad : {"/no/brackets", "<a", "<a>;", "<a>;rt=\"x", "<a>,", "<a> <b>"}) {
    EXPECT_THROW(Links(bad), Error) << bad;
  }
}

TEST(LinkFormatProperty, RoundTrip) {
  std::mt19937 rng(5);
  const char* names[] = {"rt", "if", "ct", "title", "obs", "sz"};
  const char* values[] = {"lps.silo", "core.a", "40", "a \"quoted\" title", "", "x,y;z", "0"};
  for (int i = 0; i < 500; ++i) {
    std::vector<LinkEntry> links(std::uniform_int_distribution<int>(0, 4)(rng));
    for (auto& link : links) {
      link.uri_reference = "/" + std::to_string(rng() % 30000) + "/" + std::to_string(rng() % 4);
      int count = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int k = 0; k < count; ++k) {
        link.attributes.emplace_back(names[rng() % 6], values[rng() % 7]);
      }
    }
    ASSERT_EQ(ParseLinkFormat(SerializeLinkFormat(links)), links);
  }
}

TEST(Directory, SequentialLocationsAndIdempotence) {
  ManualClock clock;
  Directory d(clock);
  auto first = d.Register("smartSilo4", 86400, kSilo, Links("</26241/0>;rt=\"lps.silo\""));
  EXPECT_EQ(first.location, "/rd/1");
  EXPECT_TRUE(first.created);
  auto pipe = d.Register("smartPipe1", 86400, kPipe, Links("</26242/0>;rt=\"lps.pipe\""));
  EXPECT_EQ(pipe.location, "/rd/2");
  auto again = d.Register("smartSilo4", 86400, kSilo, Links("</26241/1>;rt=\"lps.silo\""));
  EXPECT_EQ(again.location, "/rd/1");
  EXPECT_FALSE(again.created);
  EXPECT_EQ(d.Entries().size(), 2u);
  auto links = d.LookupLinks({.endpoint = "smartSilo4"});
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].link.uri_reference, "/26241/1");
}

TEST(Directory, LookupByAttribute) {
  ManualClock clock;
  Directory d(clock);
  d.Register("S1", 60, kSilo, Links("</26241/0>;rt=\"lps.silo\""));
  d.Register("S2", 60, kSilo, Links("</26241/0>;rt=\"lps.silo\""));
  d.Register("P1", 60, kPipe, Links("</26242/0>;rt=\"lps.pipe\""));
  auto silos = d.LookupLinks({.resource_type = "lps.silo"});
  ASSERT_EQ(silos.size(), 2u);
  EXPECT_EQ(silos[0].endpoint, "S1");
  EXPECT_EQ(silos[1].endpoint, "S2");
  EXPECT_EQ(d.LookupLinks({}).size(), 3u);
  EXPECT_TRUE(d.LookupLinks({.resource_type = "nonexistent"}).empty());
}

TEST(Directory, LifetimeExpiry) {
  ManualClock clock;
  Directory d(clock);
  auto loc = d.Register("S1", 1, kSilo, Links("</26241/0>")).location;
  EXPECT_EQ(d.LookupLinks({}).size(), 1u);
  clock.Advance(2);
  EXPECT_TRUE(d.LookupLinks({}).empty());
  EXPECT_THROW(d.Update(loc), Error);
}

TEST(Directory, RefreshKeepsEntryAlive) {
  ManualClock clock;
  Directory d(clock);
  auto loc = d.Register("S1", 1, kSilo, Links("</26241/0>")).location;
  for (int i = 0; i < 5; ++i) {
    clock.Advance(0.75);
    d.Update(loc);
  }
  EXPECT_EQ(d.LookupLinks({}).size(), 1u);
  d.Update(loc, 60);
  clock.Advance(30);
  EXPECT_EQ(d.LookupLinks({}).size(), 1u);
}

TEST(Directory, ExpiryBoundaryIsStrict) {
  ManualClock clock(100);
  Directory d(clock);
  d.Register("S1", 10, kSilo, {});
  EXPECT_TRUE(d.ExpireSweep(110).empty());
  EXPECT_EQ(d.ExpireSweep(110.001), std::vector<std::string>{"S1"});
}

TEST(Directory, SemanticLookup) {
  ManualClock clock;
  Directory d(clock);
  std::string query = Fixture("heat_discovery.rq");
  d.Register("smartSilo4", 86400, kSilo, Links("</26241/0>;rt=\"lps.silo\""));
  EXPECT_THROW(d.PutDescription("ghost", Fixture("heat_service.ttl")), Error);
  d.PutDescription("smartSilo4", Fixture("heat_service.ttl"));
  EXPECT_EQ(d.Find("smartSilo4")->description.size(), 12u);
  auto matches = d.LookupSemantic(query);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].endpoint, "smartSilo4");
  EXPECT_EQ(matches[0].binding.at("service").value, "http://ss4.ece.upatras.gr/heat");

  d.Register("coolSilo", 86400, kPipe, {});
  d.PutDescription("coolSilo", WithMaxTemp("40"));
  EXPECT_EQ(d.LookupSemantic(query).size(), 1u);
  d.PutDescription("smartSilo4", WithMaxTemp("40"));
  EXPECT_TRUE(d.LookupSemantic(query).empty());
  EXPECT_THROW(d.LookupSemantic("SELECT nonsense"), Error);
}

TEST(Directory, SemanticLookupAfterExpiry) {
  ManualClock clock;
  Directory d(clock);
  d.Register("smartSilo4", 1, kSilo, {});
  d.PutDescription("smartSilo4", Fixture("heat_service.ttl"));
  clock.Advance(2);
  EXPECT_TRUE(d.LookupSemantic(Fixture("heat_discovery.rq")).empty());
}

// A reader never sees a half-replaced description: every result is either
// the full old answer or the full new answer.
TEST(Directory, DescriptionSwapIsAtomic) {
  ManualClock clock;
  Directory d(clock);
  d.Register("S", 86400, kSilo, {});
  std::string hot = Fixture("heat_service.ttl");
  std::string cold = WithMaxTemp("40");
  std::string query = Fixture("heat_discovery.rq");
  std::atomic<bool> stop{false};
  std::thread writer([&] {
    for (int i = 0; i < 300; ++i) d.PutDescription("S", i % 2 ? hot : cold);
    stop = true;
  });
  int reads = 0;
  while (!stop) {
    auto entry = d.Find("S");
    size_t n = entry->description.size();
    ASSERT_TRUE(n == 0 || n == 12);
    auto r = d.LookupSemantic(query);
    ASSERT_LE(r.size(), 1u);
    ++reads;
  }
  writer.join();
  EXPECT_GT(reads, 0);
}

class RdServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = RdServer::Start(coap::Address::Parse("127.0.0.1:0"), clock_,
                              RdServer::Options{.sweep_interval = std::chrono::duration<double>(0)});
    client_ = coap::Endpoint::Bind(coap::Address::Parse("127.0.0.1:0"));
  }
  coap::CoapMessage Call(coap::Code method, std::string_view path, std::string_view payload = {},
                         std::string_view query = {}) {
    return client_->Request(server_->address(), coap::MakeRequest(method, path, payload, query));
  }

  ManualClock clock_;
  std::unique_ptr<RdServer> server_;
  std::unique_ptr<coap::Endpoint> client_;
};

TEST_F(RdServerTest, RegistrationInterface) {
  auto r = Call(codes::kPost, "/rd", "</26241/0>;rt=\"lps.silo\"", "ep=smartSilo4&lt=86400");
  EXPECT_EQ(r.code, codes::kCreated);
  EXPECT_EQ(r.LocationPath(), "/rd/1");
  r = Call(codes::kPost, "/rd", "</26241/0>;rt=\"lps.silo\"", "ep=smartSilo4&lt=86400");
  EXPECT_EQ(r.code, codes::kChanged);
  EXPECT_EQ(r.LocationPath(), "/rd/1");
  EXPECT_EQ(Call(codes::kPost, "/rd", "garbage", "ep=x").code, codes::kBadRequest);
  EXPECT_EQ(Call(codes::kPost, "/rd", "</a>", "lt=5").code, codes::kBadRequest);

  EXPECT_EQ(Call(codes::kPost, "/rd-desc", Fixture("heat_service.ttl"), "ep=smartSilo4").code,
            codes::kChanged);
  EXPECT_EQ(Call(codes::kPost, "/rd-desc", "x:a x:b x:c .", "ep=smartSilo4").code,
            codes::kBadRequest);
  EXPECT_EQ(Call(codes::kPost, "/rd-desc", Fixture("heat_service.ttl"), "ep=ghost").code,
            codes::kNotFound);

  EXPECT_EQ(Call(codes::kPost, "/rd/1", {}, "lt=60").code, codes::kChanged);
  EXPECT_EQ(Call(codes::kPost, "/rd/9").code, codes::kNotFound);
  EXPECT_EQ(server_->directory().Find("smartSilo4")->lifetime_s, 60);

  EXPECT_EQ(Call(codes::kDelete, "/rd/1").code, codes::kDeleted);
  EXPECT_EQ(Call(codes::kDelete, "/rd/1").code, codes::kNotFound);
}

TEST_F(RdServerTest, ClientLookups) {
  Call(codes::kPost, "/rd", "</26241/0>;rt=\"lps.silo\";ct=0", "ep=smartSilo4");
  Call(codes::kPost, "/rd", "</26242/0>;rt=\"lps.pipe\"", "ep=pipe1&base=coap://127.0.0.1:7777");
  Call(codes::kPost, "/rd-desc", Fixture("heat_service.ttl"), "ep=smartSilo4");
  CoapDirectoryClient rd(*client_, server_->address());

  auto silos = rd.LookupLinks({.resource_type = "lps.silo"});
  ASSERT_EQ(silos.size(), 1u);
  EXPECT_EQ(silos[0].endpoint, "smartSilo4");
  EXPECT_EQ(silos[0].source, client_->address());
  EXPECT_EQ(silos[0].link, Links("</26241/0>;rt=\"lps.silo\";ct=0")[0]);
  auto pipes = rd.LookupLinks({.resource_type = "lps.pipe"});
  ASSERT_EQ(pipes.size(), 1u);
  EXPECT_EQ(pipes[0].source.port(), 7777);

  auto matches = rd.LookupSemantic(Fixture("heat_discovery.rq"));
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].endpoint, "smartSilo4");
  EXPECT_EQ(matches[0].binding.at("service"),
            semantic::Term::Iri("http://ss4.ece.upatras.gr/heat"));
  EXPECT_THROW(rd.LookupSemantic("SELECT ?x WHERE { ?y ?p ?o }"), Error);

  auto description = rd.Description("smartSilo4");
  ASSERT_TRUE(description);
  EXPECT_EQ(*description, semantic::ParseTurtle(Fixture("heat_service.ttl")));
  EXPECT_FALSE(rd.Description("ghost"));

  auto ep = Call(codes::kGet, "/rd-lookup/ep", {}, "ep=pipe1");
  EXPECT_EQ(ep.PayloadString(), "</rd/2>;ep=\"pipe1\";base=\"coap://127.0.0.1:7777\";lt=\"86400\"");
}

TEST_F(RdServerTest, UnreachableDirectory) {
  coap::UdpSocket silent = coap::UdpSocket::Bind(coap::Address::Parse("127.0.0.1:0"));
  coap::RequestOptions fast;
  fast.timeout = std::chrono::duration<double>(0.02);
  fast.retries = 1;
  CoapDirectoryClient rd(*client_, silent.local_address(), fast);
  try {
    rd.LookupLinks({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDirectoryUnreachable);
  }
}

TEST(RdServerSweep, BackgroundTimerExpires) {
  SteadyClock clock;
  auto server = RdServer::Start(coap::Address::Parse("127.0.0.1:0"), clock,
                                RdServer::Options{.sweep_interval = std::chrono::duration<double>(0.05)});
  server->directory().Register("S", 1, kSilo, {});
  std::this_thread::sleep_for(std::chrono::milliseconds(1300));
  // Entries() would sweep lazily; check the sweep already happened.
  EXPECT_TRUE(server->directory().ExpireSweep().empty());
  EXPECT_TRUE(server->directory().Entries().empty());
}

}  // namespace
}  // namespace cpms::rd
