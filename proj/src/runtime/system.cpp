#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <future>

#include "json.hpp"
#include "mpst/runtime/endpoint.hpp"

namespace mpst::runtime {

std::vector<std::uint16_t> free_loopback_ports(std::size_t n) {
  std::vector<int> fds;
  std::vector<std::uint16_t> ports;
  for (std::size_t i = 0; i < n; ++i) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in a{};
    a.sin_family = AF_INET;
    a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    socklen_t len = sizeof a;
    if (fd < 0 || ::bind(fd, reinterpret_cast<sockaddr*>(&a), sizeof a) != 0 ||
        ::getsockname(fd, reinterpret_cast<sockaddr*>(&a), &len) != 0) {
      if (fd >= 0) ::close(fd);
      continue;
    }
    fds.push_back(fd);
    ports.push_back(ntohs(a.sin_port));
  }
  for (int fd : fds) ::close(fd);
  return ports;
}

Expected<SystemResult, RuntimeError> run_system(const std::vector<Endpoint>& endpoints, const HostRegistry& registry,
                                                const SystemOptions& opts) {
  const std::size_t n = endpoints.size();
  Recorder rec(opts.run.max_actions);
  std::vector<ChannelMap> channels(n);
  std::vector<std::vector<ConnSpec>> specs(n);

  if (!opts.tcp) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto [a, b] = memory_pair();
        channels[i][endpoints[j].self] = a;
        channels[j][endpoints[i].self] = b;
      }
  } else {
    // Each endpoint listens on one port; the later endpoint of a pair connects.
    std::vector<std::uint16_t> ports;
    if (opts.tcp_base_port) {
      for (std::size_t i = 0; i < n; ++i) ports.push_back(static_cast<std::uint16_t>(opts.tcp_base_port + i));
    } else {
      ports = free_loopback_ports(n);
      if (ports.size() != n) return unexpected(RuntimeError{RuntimeError::Kind::ConnectFailed, "no free ports"});
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        ConnSpec c;
        c.peer = endpoints[j].self;
        c.address = "127.0.0.1";
        if (j > i) {
          c.mode = ConnSpec::Mode::Listen;
          c.port = ports[i];
        } else {
          c.mode = ConnSpec::Mode::Connect;
          c.port = ports[j];
        }
        specs[i].push_back(c);
      }
  }

  std::mutex mu;
  std::vector<ChannelMap*> live;
  auto abort_all = [&] {
    std::lock_guard lk(mu);
    for (auto* m : live)
      for (auto& [_, c] : *m) c->abort();
  };
  rec.on_stop(abort_all);

  std::vector<std::future<Expected<ExecutionLog, RuntimeError>>> runs;
  for (std::size_t i = 0; i < n; ++i) {
    runs.push_back(std::async(std::launch::async, [&, i]() -> Expected<ExecutionLog, RuntimeError> {
      if (opts.tcp) {
        auto c = connect_tcp(endpoints[i].self, specs[i]);
        if (!c) return unexpected(RuntimeError{RuntimeError::Kind::ConnectFailed, c.error().message});
        channels[i] = std::move(*c);
      }
      {
        std::lock_guard lk(mu);
        live.push_back(&channels[i]);
        if (rec.stopped())
          for (auto& [_, c] : channels[i]) c->abort();
      }
      auto r = run_endpoint(endpoints[i], channels[i], registry, opts.run, &rec);
      if (!r) rec.stop();  // wake the others
      return r;
    }));
  }

  const auto deadline = std::chrono::steady_clock::now() + opts.watchdog;
  bool deadlock = false;
  for (auto& f : runs)
    if (f.wait_until(deadline) == std::future_status::timeout) {
      deadlock = true;
      rec.stop();
      break;
    }

  SystemResult out;
  std::optional<RuntimeError> first;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = runs[i].get();
    if (r) {
      out.truncated = out.truncated || r->truncated;
      out.logs.emplace(endpoints[i].self, std::move(*r));
    } else if (!first || first->kind == RuntimeError::Kind::PeerClosed) {
      first = r.error();
    }
  }
  if (deadlock) return unexpected(RuntimeError{RuntimeError::Kind::Deadlock, "watchdog fired"});
  if (first) {
    if (first->kind == RuntimeError::Kind::Timeout) first->kind = RuntimeError::Kind::Deadlock;
    return unexpected(*first);
  }
  out.merged = rec.merged();
  return out;
}

Expected<ConnConfig, RuntimeError> parse_conn_config(const std::string& json_text) {
  auto fail = [](const std::string& m) { return unexpected(RuntimeError{RuntimeError::Kind::Config, m}); };
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return fail("config is not a JSON object");
  ConnConfig c;
  if (!j.contains("self") || !j["self"].is_string()) return fail("config needs a string field 'self'");
  c.self = Role{j["self"].get<std::string>()};
  if (j.contains("protocol")) {
    if (!j["protocol"].is_string()) return fail("'protocol' must be a string");
    c.protocol = j["protocol"].get<std::string>();
  }
  if (!j.contains("peers") || !j["peers"].is_array()) return fail("config needs an array field 'peers'");
  for (const auto& p : j["peers"]) {
    if (!p.is_object() || !p.contains("role") || !p["role"].is_string()) return fail("each peer needs a 'role'");
    ConnSpec s;
    s.peer = Role{p["role"].get<std::string>()};
    const std::string mode = p.value("mode", "");
    if (mode == "listen") {
      s.mode = ConnSpec::Mode::Listen;
    } else if (mode == "connect") {
      s.mode = ConnSpec::Mode::Connect;
    } else {
      return fail("peer " + s.peer.name + ": mode must be 'listen' or 'connect'");
    }
    if (p.contains("address")) {
      if (!p["address"].is_string()) return fail("peer " + s.peer.name + ": 'address' must be a string");
      s.address = p["address"].get<std::string>();
    }
    if (!p.contains("port") || !p["port"].is_number_unsigned() || p["port"].get<unsigned>() > 65535)
      return fail("peer " + s.peer.name + ": 'port' must be an integer in 0..65535");
    s.port = static_cast<std::uint16_t>(p["port"].get<unsigned>());
    c.peers.push_back(s);
  }
  return c;
}

}  // namespace mpst::runtime
