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

#include "cpms/bench/scenarios.h"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstring>
#include <functional>
#include <thread>

#include "cpms/coap/endpoint.h"
#include "cpms/coap/udp_socket.h"
#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "cpms/lwm2m/device.h"
#include "cpms/plant/objects.h"

extern char** environ;

namespace cpms::bench {
namespace {

using Clock = std::chrono::steady_clock;
using Seconds = std::chrono::duration<double>;
const coap::Address kLoopback = coap::Address::Parse("127.0.0.1:0");

// One round trip; false when it timed out.
using RoundTrip = std::function<bool()>;

std::unique_ptr<lwm2m::Device> MakeHeatDevice() {
  auto device = std::make_unique<lwm2m::Device>("bench", std::vector{plant::SiloObject()});
  lwm2m::ObjectInstance instance{plant::kSiloObject, 0, {}, {plant::silo_res::kHeat}};
  instance.values[plant::silo_res::kState] = std::string("Idle");
  instance.values[plant::silo_res::kReserved] = false;
  device->AddInstance(instance);
  device->SetExecuteHook([](const lwm2m::ActionContext& c) {
    return HandleHeat(c.args) == "2.04" ? coap::MakeResponse(coap::codes::kChanged)
                                        : coap::MakeResponse(coap::codes::kBadRequest);
  });
  return device;
}

// Raw datagram echo of HandleHeat, until `stop`.
void ServeRaw(const coap::UdpSocket& socket, const std::atomic<bool>& stop) {
  while (!stop.load()) {
    auto d = socket.Receive(Seconds(0.1));
    if (!d) continue;
    std::string reply =
        HandleHeat(std::string_view(reinterpret_cast<const char*>(d->data.data()), d->data.size()));
    socket.SendTo(d->source, std::span(reinterpret_cast<const uint8_t*>(reply.data()), reply.size()));
  }
}

class RawUdpClient {
 public:
  RawUdpClient(coap::Address server, Seconds timeout)
      : socket_(coap::UdpSocket::Bind(kLoopback)), server_(server), timeout_(timeout) {}

  bool operator()() {
    socket_.SendTo(server_, std::span(reinterpret_cast<const uint8_t*>(kHeatPayload.data()),
                                      kHeatPayload.size()));
    while (true) {
      auto d = socket_.Receive(timeout_);
      if (!d) return false;
      if (d->source == server_) return true;
    }
  }

 private:
  coap::UdpSocket socket_;
  coap::Address server_;
  Seconds timeout_;
};

class CoapClient {
 public:
  CoapClient(coap::Address server, Seconds timeout)
      : endpoint_(coap::Endpoint::Bind(kLoopback)), server_(server) {
    options_.timeout = timeout;
    options_.retries = 0;
    options_.random_factor = 1.0;
  }

  bool operator()() {
    try {
      auto response = endpoint_->Request(
          server_, coap::MakeRequest(coap::codes::kPost, kHeatPath, kHeatPayload), options_);
      return response.code == coap::codes::kChanged;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kTimeout) return false;
      throw;
    }
  }

 private:
  std::unique_ptr<coap::Endpoint> endpoint_;
  coap::Address server_;
  coap::RequestOptions options_;
};

// A request/response channel inside the process: a socket pair served by a
// second thread.
class InProcChannel {
 public:
  InProcChannel() {
    if (socketpair(AF_UNIX, SOCK_SEQPACKET, 0, fds_) != 0) {
      throw Error(ErrorCode::kLaunchError, std::string("socketpair: ") + std::strerror(errno));
    }
    server_ = std::thread([this] {
      char buf[256];
      while (true) {
        ssize_t n = read(fds_[1], buf, sizeof buf);
        if (n <= 0) return;
        std::string reply = HandleHeat(std::string_view(buf, n));
        if (write(fds_[1], reply.data(), reply.size()) < 0) return;
      }
    });
  }
  ~InProcChannel() {
    shutdown(fds_[0], SHUT_RDWR);
    server_.join();
    close(fds_[0]);
    close(fds_[1]);
  }

  bool RoundTrip(Seconds timeout) {
    if (write(fds_[0], kHeatPayload.data(), kHeatPayload.size()) < 0) return false;
    pollfd p{fds_[0], POLLIN, 0};
    if (poll(&p, 1, static_cast<int>(timeout.count() * 1000)) <= 0) return false;
    char buf[64];
    return read(fds_[0], buf, sizeof buf) > 0;
  }

 private:
  int fds_[2] = {-1, -1};
  std::thread server_;
};

// A server process for the 2N scenarios.
class ChildServer {
 public:
  ChildServer(const std::string& exe, const char* mode) {
    int out[2], in[2];
    if (pipe(out) != 0 || pipe(in) != 0) {
      throw Error(ErrorCode::kLaunchError, std::string("pipe: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out[1], STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, in[0], STDIN_FILENO);
    posix_spawn_file_actions_addclose(&actions, out[0]);
    posix_spawn_file_actions_addclose(&actions, in[1]);
    std::string arg0 = exe;
    char serve[] = "bench-serve";
    char flag[] = "--mode";
    std::string mode_arg = mode;
    char* argv[] = {arg0.data(), serve, flag, mode_arg.data(), nullptr};
    int rc = posix_spawn(&pid_, exe.c_str(), &actions, nullptr, argv, environ);
    posix_spawn_file_actions_destroy(&actions);
    close(out[1]);
    close(in[0]);
    stdin_ = in[1];
    if (rc != 0) {
      close(out[0]);
      throw Error(ErrorCode::kLaunchError, exe + ": " + std::strerror(rc));
    }
    // "PORT <n>\n" within a few seconds.
    std::string line;
    pollfd p{out[0], POLLIN, 0};
    char c;
    while (line.find('\n') == std::string::npos) {
      if (poll(&p, 1, 5000) <= 0 || read(out[0], &c, 1) != 1) break;
      line += c;
    }
    close(out[0]);
    unsigned port = 0;
    if (std::sscanf(line.c_str(), "PORT %u", &port) != 1 || port == 0 || port > 65535) {
      Stop();
      throw Error(ErrorCode::kLaunchError, exe + " bench-serve did not report a port");
    }
    address_ = coap::Address(0x7f000001, static_cast<uint16_t>(port));
  }
  ~ChildServer() { Stop(); }

  const coap::Address& address() const { return address_; }

 private:
  void Stop() {
    if (stdin_ >= 0) close(stdin_);
    stdin_ = -1;
    if (pid_ <= 0) return;
    for (int i = 0; i < 100; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }

  pid_t pid_ = -1;
  int stdin_ = -1;
  coap::Address address_;
};

BenchResult Measure(Scenario scenario, const BenchOptions& options, const RoundTrip& once) {
  for (int i = 0; i < options.warmup; ++i) once();
  BenchResult result;
  result.scenario = scenario;
  std::vector<double> samples;
  samples.reserve(options.samples);
  while (static_cast<int>(samples.size()) < options.samples) {
    auto begin = Clock::now();
    bool ok = once();
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
    if (!ok || ms > options.timeout.count() * 1000) {
      if (++result.excluded > options.samples) {
        throw Error(ErrorCode::kTimeout, std::string(ScenarioName(scenario)) + ": server unresponsive");
      }
      continue;
    }
    samples.push_back(ms);
  }
  result.stats = ComputeStats(std::move(samples));
  return result;
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  switch (scenario) {
    case Scenario::kDirectCall: return "DirectCall";
    case Scenario::kInProcChannel: return "InProcChannel";
    case Scenario::kRawUdp1N: return "RawUdp_1N";
    case Scenario::kRawUdp2N: return "RawUdp_2N";
    case Scenario::kLwm2m1N: return "Lwm2m_1N";
    case Scenario::kLwm2m2N: return "Lwm2m_2N";
  }
  return "?";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  for (Scenario s : AllScenarios()) {
    if (ScenarioName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Scenario> AllScenarios() {
  return {Scenario::kDirectCall, Scenario::kInProcChannel, Scenario::kRawUdp1N,
          Scenario::kRawUdp2N,   Scenario::kLwm2m1N,       Scenario::kLwm2m2N};
}

std::string HandleHeat(std::string_view args) {
  auto parsed = ParseArgs(args);
  auto it = parsed.find("setpoint");
  if (it == parsed.end()) return "4.00";
  auto setpoint = ParseDouble(it->second);
  return setpoint && *setpoint <= 70 ? "2.04" : "4.00";
}

BenchResult RunBench(Scenario scenario, const BenchOptions& options) {
  if (options.samples <= 0) throw Error(ErrorCode::kInvalidConfig, "sample count must be positive");
  switch (scenario) {
    case Scenario::kDirectCall: {
      volatile size_t sink = 0;
      return Measure(scenario, options, [&] {
        std::string_view payload = kHeatPayload;
        // Keep the call from being folded away.
        asm volatile("" : "+r"(payload));
        sink = sink + HandleHeat(payload).size();
        return true;
      });
    }
    case Scenario::kInProcChannel: {
      InProcChannel channel;
      return Measure(scenario, options, [&] { return channel.RoundTrip(options.timeout); });
    }
    case Scenario::kRawUdp1N: {
      auto server = coap::UdpSocket::Bind(kLoopback);
      std::atomic<bool> stop{false};
      std::thread thread([&] { ServeRaw(server, stop); });
      BenchResult r;
      try {
        RawUdpClient client(server.local_address(), options.timeout);
        r = Measure(scenario, options, std::ref(client));
      } catch (...) {
        stop = true;
        thread.join();
        throw;
      }
      stop = true;
      thread.join();
      return r;
    }
    case Scenario::kRawUdp2N: {
      ChildServer child(options.server_executable, "raw");
      RawUdpClient client(child.address(), options.timeout);
      return Measure(scenario, options, std::ref(client));
    }
    case Scenario::kLwm2m1N: {
      auto device = MakeHeatDevice();
      auto server = lwm2m::ServeDevice(*device, kLoopback);
      CoapClient client(server->address(), options.timeout);
      return Measure(scenario, options, std::ref(client));
    }
    case Scenario::kLwm2m2N: {
      ChildServer child(options.server_executable, "coap");
      CoapClient client(child.address(), options.timeout);
      return Measure(scenario, options, std::ref(client));
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown scenario");
}

std::optional<int> ServeChildIfRequested(int argc, char** argv) {
  if (argc < 2 || std::string_view(argv[1]) != "bench-serve") return std::nullopt;
  std::string_view mode = argc >= 4 && std::string_view(argv[2]) == "--mode" ? argv[3] : "";
  if (mode != "raw" && mode != "coap") {
    std::fprintf(stderr, "usage: %s bench-serve --mode raw|coap\n", argv[0]);
    return 2;
  }
  // Runs until the parent closes our stdin.
  auto wait_for_parent = [] {
    char c;
    while (read(STDIN_FILENO, &c, 1) > 0) {
    }
  };
  if (mode == "raw") {
    auto socket = coap::UdpSocket::Bind(kLoopback);
    std::atomic<bool> stop{false};
    std::thread thread([&] { ServeRaw(socket, stop); });
    std::printf("PORT %u\n", socket.local_address().port());
    std::fflush(stdout);
    wait_for_parent();
    stop = true;
    thread.join();
  } else {
    auto device = MakeHeatDevice();
    auto endpoint = lwm2m::ServeDevice(*device, kLoopback);
    std::printf("PORT %u\n", endpoint->address().port());
    std::fflush(stdout);
    wait_for_parent();
  }
  return 0;
}

}  // namespace cpms::bench
