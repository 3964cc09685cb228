#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/names.hpp"
#include "mpst/runtime/wire.hpp"

namespace mpst::runtime {

// Hand-off queue of encoded frames between the interpreter and I/O.
class FrameQueue {
 public:
  enum class Pop { Ok, Closed, Timeout };

  void push(Bytes frame);
  // Closing keeps queued frames; pop drains them before reporting Closed.
  void close();
  Pop pop(Bytes& out, std::chrono::milliseconds timeout);
  bool closed() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Bytes> q_;
  bool closed_ = false;
};

// One duplex link to a peer role; frames are complete wire frames.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(Bytes frame) = 0;
  virtual FrameQueue::Pop recv(Bytes& frame, std::chrono::milliseconds timeout) = 0;
  // Flushes pending output, then tears the link down.
  virtual void close() = 0;
  // Wakes a blocked recv with Closed; used to stop a whole system.
  virtual void abort() = 0;
};

using ChannelMap = std::map<Role, std::shared_ptr<Channel>>;

// Both ends of an in-memory duplex link.
std::pair<std::shared_ptr<Channel>, std::shared_ptr<Channel>> memory_pair();

struct ConnSpec {
  enum class Mode { Listen, Connect };
  Role peer;
  Mode mode = Mode::Connect;
  std::string address = "127.0.0.1";
  std::uint16_t port = 0;
};

struct ConnectError {
  std::string message;
};

struct ConnectOptions {
  int attempts = 20;
  std::chrono::milliseconds backoff{100};
};

// Binds every Listen spec first, then connects with retries, then accepts.
// A connecting side introduces itself with its role name so several peers can
// share one listening port.
Expected<ChannelMap, ConnectError> connect_tcp(const Role& self, const std::vector<ConnSpec>& conns,
                                               const ConnectOptions& opts = {});

}  // namespace mpst::runtime
