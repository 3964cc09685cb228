#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/names.hpp"
#include "mpst/process/ast.hpp"
#include "mpst/process/lts.hpp"
#include "mpst/process/typing.hpp"
#include "mpst/runtime/channel.hpp"

namespace mpst::runtime {

struct RuntimeError {
  enum class Kind {
    Untyped,
    MissingConnection,
    ConnectFailed,
    PeerClosed,
    UnknownLabel,
    DecodeError,
    RegistryMissing,
    EvaluationError,
    Timeout,
    Deadlock,
    Config,
  };
  Kind kind;
  std::string message;
};

std::string to_string(RuntimeError::Kind k);

using HostFn = std::function<Value(const Value&)>;

// Host callbacks by name; signatures are validated against the process's
// extern declarations before a run starts.
class HostRegistry {
 public:
  void add(std::string name, ExternSig sig, HostFn fn);
  const std::pair<ExternSig, HostFn>* find(const std::string& name) const;

 private:
  std::map<std::string, std::pair<ExternSig, HostFn>> fns_;
};

struct HostCall {
  std::string fn;
  Value arg;
  Value result;
};

struct ExecutionLog {
  ValueTrace actions;
  std::vector<HostCall> calls;
  bool truncated = false;  // stopped by the action budget, not by Finish
};

struct Endpoint {
  Role self;
  Proc proc;
  ExternSigs externs;
  LabelTable labels;  // protocol-wide label ids
};

// Records the merged trace of a system and enforces a shared action budget.
// Once the budget is spent every endpoint stops at its next action.
class Recorder {
 public:
  explicit Recorder(std::size_t budget = 0) : budget_(budget) {}

  // False when the budget is exhausted; the action is then not performed.
  bool record(const ValueAction& a);
  bool stopped() const { return stopped_; }
  void stop();
  void on_stop(std::function<void()> f);
  ValueTrace merged() const;

 private:
  mutable std::mutex mu_;
  std::size_t budget_;
  ValueTrace merged_;
  std::atomic<bool> stopped_{false};
  std::vector<std::function<void()>> on_stop_;
};

struct RunOptions {
  std::chrono::milliseconds recv_timeout{10000};
  std::size_t max_actions = 0;  // 0: unlimited
};

// Interprets a typechecked process over established channels. Finish closes
// every channel. A label outside the offered alternatives is a protocol error.
Expected<ExecutionLog, RuntimeError> run_endpoint(const Endpoint& ep, const ChannelMap& channels,
                                                  const HostRegistry& registry, const RunOptions& opts,
                                                  Recorder* recorder = nullptr);

// Checks typing, connections, labels and the registry without running.
Expected<LocalType, RuntimeError> validate_endpoint(const Endpoint& ep, const ChannelMap& channels,
                                                    const HostRegistry& registry);

struct SystemResult {
  std::map<Role, ExecutionLog> logs;
  ValueTrace merged;
  bool truncated = false;
};

struct SystemOptions {
  RunOptions run;
  std::chrono::milliseconds watchdog{10000};
  bool tcp = false;
  std::uint16_t tcp_base_port = 0;  // 0: pick free loopback ports
};

// Runs every endpoint on its own thread, wired pairwise. The watchdog turns a
// stuck system into Deadlock.
Expected<SystemResult, RuntimeError> run_system(const std::vector<Endpoint>& endpoints, const HostRegistry& registry,
                                                const SystemOptions& opts = {});

// Connection config file (JSON):
//   {"self": "Alice", "protocol": "ping_pong.gt",
//    "peers": [{"role": "Bob", "mode": "listen", "address": "127.0.0.1", "port": 9000}]}
struct ConnConfig {
  Role self;
  std::string protocol;  // path, relative to the config file
  std::vector<ConnSpec> peers;
};

Expected<ConnConfig, RuntimeError> parse_conn_config(const std::string& json_text);

// Ports the kernel reports free on loopback at the time of the call.
std::vector<std::uint16_t> free_loopback_ports(std::size_t n);

}  // namespace mpst::runtime
