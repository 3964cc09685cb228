#include <thread>

#include "corpus.hpp"
#include "doctest.h"
#include "mpst/process/conformance.hpp"
#include "mpst/runtime/host.hpp"
#include "mpst/runtime/wire.hpp"
#include "random_gen.hpp"
#include "systems.hpp"

using namespace mpst;
using namespace mpst::runtime;
using namespace mpst::testing;

namespace {

Bytes bytes(std::initializer_list<int> xs) {
  Bytes b;
  for (int x : xs) b.push_back(static_cast<std::uint8_t>(x));
  return b;
}

Endpoint ep(const char* self, const std::string& proc, std::set<Label> labels) {
  return Endpoint{Role{self}, proc_of(proc), {}, LabelTable(labels)};
}

}  // namespace

TEST_CASE("fixed byte vectors") {
  CHECK(*encode_value(Value::nat(7), Sort::nat()) == bytes({0, 0, 0, 0, 0, 0, 0, 7}));
  CHECK(*encode_value(Value::boolean(true), Sort::boolean()) == bytes({1}));
  CHECK(*frame(WireMessage{0, {}}) == bytes({0, 0, 0, 4, 0, 0, 0, 0}));
  Bytes f = *frame(WireMessage{2, *encode_value(Value::nat(7), Sort::nat())});
  CHECK(f.size() == 16);
  CHECK(read_u32(f.data()) == 12);
  CHECK(read_u32(f.data() + 4) == 2);
  Bytes p = *encode_value(Value::pair(Value::nat(1), Value::boolean(false)), Sort::pair(Sort::nat(), Sort::boolean()));
  CHECK(p == bytes({0, 0, 0, 0, 0, 0, 0, 1, 0}));
  CHECK(*encode_value(Value::integer(-1), Sort::integer()) == bytes({255, 255, 255, 255, 255, 255, 255, 255}));
  CHECK(*encode_value(Value::inr(Value::unit()), Sort::sum(Sort::nat(), Sort::unit())) == bytes({1}));
  CHECK(*encode_value(Value::seq({Value::boolean(true)}), Sort::seq(Sort::boolean())) == bytes({0, 0, 0, 1, 1}));
}

TEST_CASE("round trips on random values") {
  Rng rng(17);
  for (int i = 0; i < 3000; ++i) {
    Sort s = random_sort(rng, 3);
    Value v = random_value(rng, s);
    auto enc = encode_value(v, s);
    REQUIRE(enc.has_value());
    auto dec = decode_value(*enc, s);
    REQUIRE(dec.has_value());
    CHECK(*dec == v);
    WireMessage m{static_cast<std::uint32_t>(i), *enc};
    auto fr = frame(m);
    REQUIRE(fr.has_value());
    auto back = deframe(*fr);
    REQUIRE(back.has_value());
    CHECK(back->message == m);
    CHECK(back->consumed == fr->size());
  }
}

TEST_CASE("decoding errors") {
  CHECK(encode_value(Value::boolean(true), Sort::nat()).error().kind == WireError::Kind::SortMismatch);
  CHECK(decode_value(bytes({0, 0, 0}), Sort::nat()).error().kind == WireError::Kind::Malformed);
  CHECK(decode_value(bytes({128, 0, 0, 0, 0, 0, 0, 0}), Sort::nat()).error().kind == WireError::Kind::NegativeNat);
  CHECK(decode_value(bytes({2}), Sort::boolean()).error().kind == WireError::Kind::Malformed);
  CHECK(decode_value(bytes({1, 0}), Sort::boolean()).error().kind == WireError::Kind::Malformed);
  CHECK(decode_value(bytes({0, 0, 0, 9}), Sort::seq(Sort::nat())).error().kind != WireError::Kind::SortMismatch);
  CHECK(decode_value(bytes({0, 0, 0, 2}), Sort::seq(Sort::unit()))->items().size() == 2);

  Bytes f = *frame(WireMessage{1, bytes({1, 2, 3})});
  for (std::size_t cut = 0; cut < f.size(); ++cut)
    CHECK(deframe(std::span(f.data(), cut)).error().kind == WireError::Kind::Truncated);
  CHECK(deframe(bytes({0x01, 0x00, 0x00, 0x05, 0, 0, 0, 0})).error().kind == WireError::Kind::OversizeFrame);
  CHECK(deframe(bytes({0, 0, 0, 2, 0, 0})).error().kind == WireError::Kind::Malformed);
  Bytes big(kMaxFrameLength, 0);
  CHECK(frame(WireMessage{0, big}).error().kind == WireError::Kind::OversizeFrame);
  // Two frames back to back: one at a time.
  Bytes two = f;
  Bytes g = *frame(WireMessage{5, {}});
  two.insert(two.end(), g.begin(), g.end());
  auto first = deframe(two);
  CHECK(first->consumed == f.size());
  CHECK(deframe(std::span(two).subspan(first->consumed))->message.label_id == 5);
}

TEST_CASE("in-memory channels keep FIFO order") {
  auto [a, b] = memory_pair();
  for (std::uint8_t i = 0; i < 50; ++i) a->send(Bytes{i});
  for (std::uint8_t i = 0; i < 50; ++i) {
    Bytes out;
    REQUIRE(b->recv(out, std::chrono::milliseconds(100)) == FrameQueue::Pop::Ok);
    CHECK(out == Bytes{i});
  }
  Bytes out;
  CHECK(b->recv(out, std::chrono::milliseconds(10)) == FrameQueue::Pop::Timeout);
  a->close();
  CHECK(b->recv(out, std::chrono::milliseconds(100)) == FrameQueue::Pop::Closed);
}

TEST_CASE("corpus systems run in memory") {
  for (const auto& s : corpus_systems()) {
    auto err = run_and_check(s, false);
    CHECK_MESSAGE(!err, *err);
  }
}

TEST_CASE("corpus systems run over TCP loopback") {
  for (const auto& s : corpus_systems()) {
    auto err = run_and_check(s, true);
    CHECK_MESSAGE(!err, *err);
  }
}

TEST_CASE("two buyer ends with a rejection") {
  auto systems = corpus_systems();
  const auto& tb = systems[2];
  auto res = run_system(tb.endpoints, builtin_registry());
  REQUIRE(res.has_value());
  REQUIRE_FALSE(res->merged.empty());
  CHECK(res->merged.back().label == Label{"Reject"});
  CHECK(res->logs.at(Role{"B"}).actions.at(1).value == Value::nat(7));
}

TEST_CASE("ping pong client quits after one reply") {
  auto systems = corpus_systems();
  auto res = run_system(systems[1].endpoints, builtin_registry());
  REQUIRE(res.has_value());
  Trace alice = erase(res->logs.at(Role{"Alice"}).actions);
  REQUIRE(alice.size() == 3);
  CHECK(alice[0].label == Label{"l2"});
  CHECK(alice[2].label == Label{"l1"});
  CHECK(subtrace_check(alice, erase(res->merged), Role{"Alice"}));
  CHECK(subtrace_check(erase(res->logs.at(Role{"Bob"}).actions), erase(res->merged), Role{"Bob"}));
}

TEST_CASE("pipeline host calls are logged") {
  auto systems = corpus_systems();
  SystemOptions opts;
  opts.run.max_actions = 12;
  auto res = run_system(systems[0].endpoints, builtin_registry(), opts);
  REQUIRE(res.has_value());
  CHECK(res->truncated);
  CHECK(res->merged.size() == 12);
  const auto& bob = res->logs.at(Role{"Bob"});
  for (const auto& c : bob.calls) {
    CHECK(c.fn == "compute");
    CHECK(c.result == Value::nat(c.arg.as_nat() * 2));
  }
}

TEST_CASE("a finish-only endpoint") {
  auto log = run_endpoint(ep("A", "finish", {}), {}, HostRegistry{}, RunOptions{});
  REQUIRE(log.has_value());
  CHECK(log->actions.empty());
  auto sys = run_system({ep("A", "finish", {})}, HostRegistry{});
  REQUIRE(sys.has_value());
  CHECK(sys->merged.empty());
}

TEST_CASE("validation before running") {
  HostRegistry none;
  CHECK(run_endpoint(ep("A", "send B l(true : nat); finish", {Label{"l"}}), {}, none, {}).error().kind ==
        RuntimeError::Kind::Untyped);
  CHECK(run_endpoint(ep("A", "send B l(1 : nat); finish", {Label{"l"}}), {}, none, {}).error().kind ==
        RuntimeError::Kind::MissingConnection);
  auto [a, b] = memory_pair();
  ChannelMap cm{{Role{"B"}, a}};
  CHECK(run_endpoint(ep("A", "send B zz(1 : nat); finish", {Label{"l"}}), cm, none, {}).error().kind ==
        RuntimeError::Kind::UnknownLabel);
  Endpoint host{Role{"A"}, proc_of("read next -> x : nat; finish"), {{"next", ExternSig{Sort::unit(), Sort::nat()}}},
                {}};
  CHECK(run_endpoint(host, {}, none, {}).error().kind == RuntimeError::Kind::RegistryMissing);
  CHECK(run_endpoint(host, {}, builtin_registry(), {}).has_value());
  HostRegistry wrong;
  wrong.add("next", ExternSig{Sort::unit(), Sort::boolean()}, [](const Value&) { return Value::boolean(true); });
  CHECK(run_endpoint(host, {}, wrong, {}).error().kind == RuntimeError::Kind::RegistryMissing);
}

TEST_CASE("receive-side protocol errors") {
  std::set<Label> labels{Label{"a"}, Label{"b"}, Label{"c"}};
  auto recv_with = [&](Bytes f) {
    auto [a, b] = memory_pair();
    a->send(std::move(f));
    return run_endpoint(ep("B", "recv A a(x : nat); finish", labels), {{Role{"A"}, b}}, HostRegistry{},
                        RunOptions{std::chrono::milliseconds(500), 0});
  };
  CHECK(recv_with(*frame(WireMessage{99, {}})).error().kind == RuntimeError::Kind::UnknownLabel);
  CHECK(recv_with(*frame(WireMessage{1, *encode_value(Value::nat(1), Sort::nat())})).error().kind ==
        RuntimeError::Kind::UnknownLabel);
  CHECK(recv_with(*frame(WireMessage{0, bytes({1})})).error().kind == RuntimeError::Kind::DecodeError);
  auto ok = recv_with(*frame(WireMessage{0, *encode_value(Value::nat(9), Sort::nat())}));
  REQUIRE(ok.has_value());
  CHECK(ok->actions.at(0).value == Value::nat(9));

  auto [a, b] = memory_pair();
  a->close();
  CHECK(run_endpoint(ep("B", "recv A a(x : nat); finish", labels), {{Role{"A"}, b}}, HostRegistry{}, {})
            .error()
            .kind == RuntimeError::Kind::PeerClosed);
  auto [c, d] = memory_pair();
  CHECK(run_endpoint(ep("B", "recv A a(x : nat); finish", labels), {{Role{"A"}, d}}, HostRegistry{},
                     RunOptions{std::chrono::milliseconds(50), 0})
            .error()
            .kind == RuntimeError::Kind::Timeout);
}

TEST_CASE("a stuck system is reported as deadlock") {
  std::set<Label> labels{Label{"l"}};
  std::vector<Endpoint> eps{ep("A", "recv B l(x : nat); finish", labels), ep("B", "recv A l(x : nat); finish", labels)};
  SystemOptions opts;
  opts.watchdog = std::chrono::milliseconds(200);
  auto res = run_system(eps, HostRegistry{}, opts);
  REQUIRE_FALSE(res.has_value());
  CHECK(res.error().kind == RuntimeError::Kind::Deadlock);
}

TEST_CASE("connection config files") {
  auto c = parse_conn_config(
      R"({"self": "Alice", "protocol": "ping_pong.gt",
          "peers": [{"role": "Bob", "mode": "listen", "port": 9000},
                    {"role": "Carol", "mode": "connect", "address": "127.0.0.1", "port": 9001}]})");
  REQUIRE(c.has_value());
  CHECK(c->self == Role{"Alice"});
  CHECK(c->protocol == "ping_pong.gt");
  REQUIRE(c->peers.size() == 2);
  CHECK(c->peers[0].mode == ConnSpec::Mode::Listen);
  CHECK(c->peers[0].address == "127.0.0.1");
  CHECK(c->peers[1].port == 9001);
  CHECK(parse_conn_config("{").error().kind == RuntimeError::Kind::Config);
  CHECK(parse_conn_config(R"({"peers": []})").error().kind == RuntimeError::Kind::Config);
  CHECK(parse_conn_config(R"({"self": "A", "peers": [{"role": "B", "mode": "dial", "port": 1}]})").error().kind ==
        RuntimeError::Kind::Config);
  CHECK(parse_conn_config(R"({"self": "A", "peers": [{"role": "B", "mode": "listen", "port": 70000}]})")
            .error()
            .kind == RuntimeError::Kind::Config);
}

TEST_CASE("TCP peers sharing one listening port") {
  auto ports = free_loopback_ports(1);
  REQUIRE(ports.size() == 1);
  std::uint16_t port = ports[0];
  Expected<ChannelMap, ConnectError> hub = unexpected(ConnectError{"unset"});
  std::thread t([&] {
    hub = connect_tcp(Role{"H"}, {ConnSpec{Role{"X"}, ConnSpec::Mode::Listen, "127.0.0.1", port},
                                  ConnSpec{Role{"Y"}, ConnSpec::Mode::Listen, "127.0.0.1", port}});
  });
  auto x = connect_tcp(Role{"X"}, {ConnSpec{Role{"H"}, ConnSpec::Mode::Connect, "127.0.0.1", port}});
  auto y = connect_tcp(Role{"Y"}, {ConnSpec{Role{"H"}, ConnSpec::Mode::Connect, "127.0.0.1", port}});
  t.join();
  REQUIRE(hub.has_value());
  REQUIRE(x.has_value());
  REQUIRE(y.has_value());
  Bytes fy = *frame(WireMessage{7, {}}), fx = *frame(WireMessage{3, {}});
  y->at(Role{"H"})->send(fy);
  x->at(Role{"H"})->send(fx);
  Bytes out;
  REQUIRE(hub->at(Role{"Y"})->recv(out, std::chrono::milliseconds(2000)) == FrameQueue::Pop::Ok);
  CHECK(out == fy);
  REQUIRE(hub->at(Role{"X"})->recv(out, std::chrono::milliseconds(2000)) == FrameQueue::Pop::Ok);
  CHECK(out == fx);
  for (auto* m : {&*hub, &*x, &*y})
    for (auto& [_, c] : *m) c->close();
}

TEST_CASE("extern libraries register host functions") {
  HostRegistry reg;
  REQUIRE(load_extern_library(MPST_PLUGIN_PATH, reg).has_value());
  const auto* f = reg.find("triple");
  REQUIRE(f != nullptr);
  CHECK(f->first == ExternSig{Sort::nat(), Sort::nat()});
  CHECK(f->second(Value::nat(5)) == Value::nat(15));
  CHECK(load_extern_library("/nonexistent/lib.so", reg).error().kind == RuntimeError::Kind::RegistryMissing);
}
