#include "mpst/runtime/channel.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <set>

namespace mpst::runtime {

void FrameQueue::push(Bytes frame) {
  {
    std::lock_guard lk(mu_);
    if (closed_) return;
    q_.push_back(std::move(frame));
  }
  cv_.notify_one();
}

void FrameQueue::close() {
  {
    std::lock_guard lk(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool FrameQueue::closed() const {
  std::lock_guard lk(mu_);
  return closed_;
}

FrameQueue::Pop FrameQueue::pop(Bytes& out, std::chrono::milliseconds timeout) {
  std::unique_lock lk(mu_);
  if (!cv_.wait_for(lk, timeout, [this] { return !q_.empty() || closed_; })) return Pop::Timeout;
  if (q_.empty()) return Pop::Closed;
  out = std::move(q_.front());
  q_.pop_front();
  return Pop::Ok;
}

namespace {

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<FrameQueue> in, std::shared_ptr<FrameQueue> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  void send(Bytes frame) override { out_->push(std::move(frame)); }
  FrameQueue::Pop recv(Bytes& frame, std::chrono::milliseconds timeout) override { return in_->pop(frame, timeout); }
  void close() override { out_->close(); }
  void abort() override {
    in_->close();
    out_->close();
  }

 private:
  std::shared_ptr<FrameQueue> in_, out_;
};

constexpr std::uint32_t kHelloLabel = 0xFFFFFFFFu;

bool write_all(int fd, const std::uint8_t* p, std::size_t n) {
  while (n > 0) {
    ssize_t k = ::send(fd, p, n, MSG_NOSIGNAL);
    if (k < 0 && errno == EINTR) continue;
    if (k <= 0) return false;
    p += k;
    n -= static_cast<std::size_t>(k);
  }
  return true;
}

bool read_all(int fd, std::uint8_t* p, std::size_t n) {
  while (n > 0) {
    ssize_t k = ::recv(fd, p, n, 0);
    if (k < 0 && errno == EINTR) continue;
    if (k <= 0) return false;
    p += k;
    n -= static_cast<std::size_t>(k);
  }
  return true;
}

// Reads one whole frame (length prefix included) from a socket.
bool read_frame(int fd, Bytes& out) {
  out.assign(4, 0);
  if (!read_all(fd, out.data(), 4)) return false;
  const std::uint32_t len = read_u32(out.data());
  if (len < 4 || len > kMaxFrameLength) return false;
  out.resize(4 + len);
  return read_all(fd, out.data() + 4, len);
}

class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    writer_ = std::thread([this] {
      Bytes f;
      while (out_.pop(f, std::chrono::hours(24)) == FrameQueue::Pop::Ok)
        if (!write_all(fd_, f.data(), f.size())) break;
      ::shutdown(fd_, SHUT_WR);
    });
    reader_ = std::thread([this] {
      Bytes f;
      while (read_frame(fd_, f)) in_.push(std::move(f));
      in_.close();
    });
  }
  ~TcpChannel() override { close(); }

  void send(Bytes frame) override { out_.push(std::move(frame)); }
  FrameQueue::Pop recv(Bytes& frame, std::chrono::milliseconds timeout) override { return in_.pop(frame, timeout); }
  void close() override {
    if (closed_.exchange(true)) return;
    out_.close();
    writer_.join();
    ::shutdown(fd_, SHUT_RD);
    reader_.join();
    ::close(fd_);
  }
  void abort() override {
    in_.close();
    out_.close();
  }

 private:
  int fd_;
  FrameQueue in_, out_;
  std::thread writer_, reader_;
  std::atomic<bool> closed_{false};
};

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(Fd&& o) noexcept : fd(std::exchange(o.fd, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    std::swap(fd, o.fd);
    return *this;
  }
  ~Fd() {
    if (fd >= 0) ::close(fd);
  }
  int release() { return std::exchange(fd, -1); }
};

std::string endpoint_text(const std::string& address, std::uint16_t port) {
  return address + ":" + std::to_string(port);
}

Expected<addrinfo*, ConnectError> resolve(const std::string& address, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string svc = std::to_string(port);
  int rc = ::getaddrinfo(address.empty() ? nullptr : address.c_str(), svc.c_str(), &hints, &res);
  if (rc != 0 || !res)
    return unexpected(ConnectError{"cannot resolve " + endpoint_text(address, port) + ": " + ::gai_strerror(rc)});
  return res;
}

void no_delay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

std::pair<std::shared_ptr<Channel>, std::shared_ptr<Channel>> memory_pair() {
  auto ab = std::make_shared<FrameQueue>();
  auto ba = std::make_shared<FrameQueue>();
  return {std::make_shared<MemoryChannel>(ba, ab), std::make_shared<MemoryChannel>(ab, ba)};
}

Expected<ChannelMap, ConnectError> connect_tcp(const Role& self, const std::vector<ConnSpec>& conns,
                                               const ConnectOptions& opts) {
  std::set<Role> seen;
  for (const auto& c : conns)
    if (!seen.insert(c.peer).second) return unexpected(ConnectError{"two connections for peer " + c.peer.name});

  // 1. Bind every listening socket before anything else.
  struct Listener {
    Fd fd;
    std::set<Role> expected;
  };
  std::map<std::pair<std::string, std::uint16_t>, Listener> listeners;
  for (const auto& c : conns) {
    if (c.mode != ConnSpec::Mode::Listen) continue;
    auto key = std::make_pair(c.address, c.port);
    auto it = listeners.find(key);
    if (it == listeners.end()) {
      auto ai = resolve(c.address, c.port, true);
      if (!ai) return unexpected(ai.error());
      Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
      int one = 1;
      ::setsockopt(fd.fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
      const bool ok = fd.fd >= 0 && ::bind(fd.fd, (*ai)->ai_addr, (*ai)->ai_addrlen) == 0 && ::listen(fd.fd, 16) == 0;
      const int err = errno;
      ::freeaddrinfo(*ai);
      if (!ok)
        return unexpected(ConnectError{"cannot listen on " + endpoint_text(c.address, c.port) + ": " + std::strerror(err)});
      it = listeners.emplace(key, Listener{std::move(fd), {}}).first;
    }
    it->second.expected.insert(c.peer);
  }

  std::map<Role, Fd> links;

  // 2. Connect, retrying while the other side may still be starting.
  for (const auto& c : conns) {
    if (c.mode != ConnSpec::Mode::Connect) continue;
    auto ai = resolve(c.address, c.port, false);
    if (!ai) return unexpected(ai.error());
    Fd fd;
    for (int attempt = 0; attempt < opts.attempts; ++attempt) {
      Fd s(::socket(AF_INET, SOCK_STREAM, 0));
      if (s.fd >= 0 && ::connect(s.fd, (*ai)->ai_addr, (*ai)->ai_addrlen) == 0) {
        fd = std::move(s);
        break;
      }
      std::this_thread::sleep_for(opts.backoff);
    }
    ::freeaddrinfo(*ai);
    if (fd.fd < 0)
      return unexpected(ConnectError{"cannot connect to " + c.peer.name + " at " + endpoint_text(c.address, c.port)});
    no_delay(fd.fd);
    Bytes hello;
    write_u32(static_cast<std::uint32_t>(4 + self.name.size()), hello);
    write_u32(kHelloLabel, hello);
    hello.insert(hello.end(), self.name.begin(), self.name.end());
    if (!write_all(fd.fd, hello.data(), hello.size()))
      return unexpected(ConnectError{"lost connection to " + c.peer.name + " during handshake"});
    links.emplace(c.peer, std::move(fd));
  }

  // 3. Accept the expected peers on each listener.
  const auto accept_window = opts.backoff * opts.attempts * 2;
  for (auto& [key, l] : listeners) {
    while (!l.expected.empty()) {
      pollfd p{l.fd.fd, POLLIN, 0};
      int rc = ::poll(&p, 1, static_cast<int>(accept_window.count()));
      if (rc <= 0)
        return unexpected(ConnectError{"no connection from " + l.expected.begin()->name + " on " +
                                       endpoint_text(key.first, key.second)});
      Fd s(::accept(l.fd.fd, nullptr, nullptr));
      if (s.fd < 0) continue;
      no_delay(s.fd);
      Bytes hello;
      if (!read_frame(s.fd, hello) || read_u32(hello.data() + 4) != kHelloLabel) continue;
      Role who{std::string(hello.begin() + 8, hello.end())};
      if (!l.expected.erase(who)) continue;
      links.emplace(who, std::move(s));
    }
  }

  ChannelMap out;
  for (auto& [r, fd] : links) out.emplace(r, std::make_shared<TcpChannel>(fd.release()));
  return out;
}

}  // namespace mpst::runtime
