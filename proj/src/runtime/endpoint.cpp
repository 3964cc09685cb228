#include "mpst/runtime/endpoint.hpp"

#include <set>

#include "mpst/process/eval.hpp"

namespace mpst::runtime {

std::string to_string(RuntimeError::Kind k) {
  switch (k) {
    case RuntimeError::Kind::Untyped: return "Untyped";
    case RuntimeError::Kind::MissingConnection: return "MissingConnection";
    case RuntimeError::Kind::ConnectFailed: return "ConnectFailed";
    case RuntimeError::Kind::PeerClosed: return "PeerClosed";
    case RuntimeError::Kind::UnknownLabel: return "UnknownLabel";
    case RuntimeError::Kind::DecodeError: return "DecodeError";
    case RuntimeError::Kind::RegistryMissing: return "RegistryMissing";
    case RuntimeError::Kind::EvaluationError: return "EvaluationError";
    case RuntimeError::Kind::Timeout: return "Timeout";
    case RuntimeError::Kind::Deadlock: return "Deadlock";
    case RuntimeError::Kind::Config: return "Config";
  }
  return "?";
}

void HostRegistry::add(std::string name, ExternSig sig, HostFn fn) {
  fns_[std::move(name)] = {std::move(sig), std::move(fn)};
}

const std::pair<ExternSig, HostFn>* HostRegistry::find(const std::string& name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : &it->second;
}

bool Recorder::record(const ValueAction& a) {
  bool exhausted = false;
  {
    std::lock_guard lk(mu_);
    if (stopped_) return false;
    if (budget_ && merged_.size() >= budget_) {
      exhausted = true;
    } else {
      merged_.push_back(a);
      return true;
    }
  }
  if (exhausted) stop();
  return false;
}

void Recorder::stop() {
  std::vector<std::function<void()>> fs;
  {
    std::lock_guard lk(mu_);
    if (stopped_.exchange(true)) return;
    fs = on_stop_;
  }
  for (auto& f : fs) f();
}

void Recorder::on_stop(std::function<void()> f) {
  std::lock_guard lk(mu_);
  on_stop_.push_back(std::move(f));
}

ValueTrace Recorder::merged() const {
  std::lock_guard lk(mu_);
  return merged_;
}

namespace {

struct Uses {
  std::set<Role> peers;
  std::set<Label> labels;
  std::set<std::string> fns;
};

void collect(const Expr& e, Uses& u) {
  if (e.kind() == Expr::Kind::Extern) u.fns.insert(e.name());
  if (e.kind() == Expr::Kind::Lit || e.kind() == Expr::Kind::Var) return;
  for (const auto& a : e.args()) collect(a, u);
}

void collect(const Proc& p, Uses& u) {
  switch (p.kind()) {
    case Proc::Kind::Finish:
    case Proc::Kind::Jump:
      return;
    case Proc::Kind::Loop:
      collect(p.cont(), u);
      return;
    case Proc::Kind::Send:
      u.peers.insert(p.peer());
      u.labels.insert(p.label());
      collect(p.expr(), u);
      collect(p.cont(), u);
      return;
    case Proc::Kind::Recv:
      u.peers.insert(p.peer());
      for (const auto& a : p.recv_alts()) {
        u.labels.insert(a.label);
        collect(a.cont(), u);
      }
      return;
    case Proc::Kind::Select:
      u.peers.insert(p.peer());
      for (const auto& a : p.select_alts()) {
        if (a.kind == SelectAlt::Kind::Skip) continue;
        u.labels.insert(a.label);
        if (a.kind == SelectAlt::Kind::Case) collect(a.guard, u);
        collect(a.payload, u);
        collect(a.cont(), u);
      }
      return;
    case Proc::Kind::If:
      collect(p.expr(), u);
      collect(p.cont(), u);
      collect(p.else_branch(), u);
      return;
    case Proc::Kind::Read:
      u.fns.insert(p.fn());
      collect(p.cont(), u);
      return;
    case Proc::Kind::Write:
    case Proc::Kind::Interact:
      u.fns.insert(p.fn());
      collect(p.expr(), u);
      collect(p.cont(), u);
      return;
  }
}

RuntimeError err(RuntimeError::Kind k, std::string m) { return RuntimeError{k, std::move(m)}; }

class Interpreter {
 public:
  Interpreter(const Endpoint& ep, const ChannelMap& ch, const HostRegistry& reg, const RunOptions& opts,
              Recorder& rec)
      : ep_(ep), ch_(ch), reg_(reg), opts_(opts), rec_(rec) {}

  Expected<ExecutionLog, RuntimeError> run() {
    auto r = loop();
    for (auto& [_, c] : ch_) c->close();
    if (!r) return unexpected(r.error());
    return std::move(log_);
  }

 private:
  using Env = std::vector<std::pair<std::string, Value>>;
  struct LoopFrame {
    Proc body;
    Env env;
  };

  Status<RuntimeError> loop() {
    Proc cur = ep_.proc;
    while (true) {
      switch (cur.kind()) {
        case Proc::Kind::Finish:
          return Ok{};
        case Proc::Kind::Jump: {
          // Re-enter the loop `index` levels out, restoring its scope.
          const std::size_t target = loops_.size() - 1 - cur.jump_index();
          loops_.resize(target + 1);
          env_ = loops_[target].env;
          cur = loops_[target].body;
          break;
        }
        case Proc::Kind::Loop:
          loops_.push_back({cur.cont(), env_});
          cur = cur.cont();
          break;
        case Proc::Kind::Send: {
          auto v = eval(cur.expr());
          if (!v) return unexpected(v.error());
          auto s = send(cur.peer(), cur.label(), *v, cur.sort());
          if (!s) return s;
          if (stopped_) return Ok{};
          cur = cur.cont();
          break;
        }
        case Proc::Kind::Select: {
          const SelectAlt* fire = nullptr;
          for (const auto& a : cur.select_alts()) {
            if (a.kind == SelectAlt::Kind::Skip) continue;
            if (a.kind == SelectAlt::Kind::Default) {
              fire = &a;
              break;
            }
            auto g = eval(a.guard);
            if (!g) return unexpected(g.error());
            if (g->as_bool()) {
              fire = &a;
              break;
            }
          }
          if (!fire) return unexpected(err(RuntimeError::Kind::EvaluationError, "no alternative of select fired"));
          auto v = eval(fire->payload);
          if (!v) return unexpected(v.error());
          auto s = send(cur.peer(), fire->label, *v, fire->sort);
          if (!s) return s;
          if (stopped_) return Ok{};
          cur = fire->cont();
          break;
        }
        case Proc::Kind::Recv: {
          auto next = recv(cur);
          if (!next) return unexpected(next.error());
          if (stopped_) return Ok{};
          cur = *next;
          break;
        }
        case Proc::Kind::If: {
          auto c = eval(cur.expr());
          if (!c) return unexpected(c.error());
          cur = c->as_bool() ? cur.cont() : cur.else_branch();
          break;
        }
        case Proc::Kind::Read:
        case Proc::Kind::Write:
        case Proc::Kind::Interact: {
          Value arg;
          if (cur.kind() != Proc::Kind::Read) {
            auto a = eval(cur.expr());
            if (!a) return unexpected(a.error());
            arg = *a;
          }
          auto res = call(cur.fn(), arg);
          if (!res) return unexpected(err(RuntimeError::Kind::EvaluationError, res.error()));
          if (cur.kind() != Proc::Kind::Write) env_.emplace_back(cur.var(), *res);
          cur = cur.cont();
          break;
        }
      }
    }
  }

  Expected<Value, std::string> call(const std::string& fn, const Value& arg) {
    const auto* h = reg_.find(fn);
    if (!h) return unexpected("external function " + fn + " is not registered");
    Value out;
    try {
      out = h->second(arg);
    } catch (const std::exception& e) {
      return unexpected("external function " + fn + " failed: " + e.what());
    }
    if (!inhabits(out, h->first.result))
      return unexpected("external function " + fn + " returned " + out.to_string() + ", expected sort " +
                        h->first.result.to_string());
    log_.calls.push_back({fn, arg, out});
    return out;
  }

  Expected<Value, RuntimeError> eval(const Expr& e) {
    auto lookup = [this](const std::string& x) -> std::optional<Value> {
      for (auto it = env_.rbegin(); it != env_.rend(); ++it)
        if (it->first == x) return it->second;
      return std::nullopt;
    };
    auto ext = [this](const std::string& fn, const Value& a) { return call(fn, a); };
    auto v = evaluate(e, lookup, ext);
    if (!v) return unexpected(err(RuntimeError::Kind::EvaluationError, v.error()));
    return *v;
  }

  Channel& channel(const Role& peer) { return *ch_.at(peer); }

  Status<RuntimeError> send(const Role& peer, const Label& l, const Value& v, const Sort& s) {
    if (!inhabits(v, s))
      return unexpected(err(RuntimeError::Kind::EvaluationError,
                            "payload " + v.to_string() + " is not of sort " + s.to_string()));
    ValueAction a{Dir::Send, ep_.self, peer, l, v, s};
    if (!rec_.record(a)) {
      stop();
      return Ok{};
    }
    WireMessage m{*ep_.labels.id(l), {}};
    encode_value_into(v, s, m.payload);
    auto f = frame(m);
    if (!f) return unexpected(err(RuntimeError::Kind::EvaluationError, f.error().message));
    channel(peer).send(std::move(*f));
    log_.actions.push_back(std::move(a));
    return Ok{};
  }

  Expected<Proc, RuntimeError> recv(const Proc& p) {
    Bytes raw;
    switch (channel(p.peer()).recv(raw, opts_.recv_timeout)) {
      case FrameQueue::Pop::Ok:
        break;
      case FrameQueue::Pop::Timeout:
        return unexpected(err(RuntimeError::Kind::Timeout, "no message from " + p.peer().name));
      case FrameQueue::Pop::Closed:
        if (rec_.stopped()) {
          stop();
          return p;
        }
        return unexpected(err(RuntimeError::Kind::PeerClosed, p.peer().name + " closed the connection"));
    }
    auto d = deframe(raw);
    if (!d) return unexpected(err(RuntimeError::Kind::DecodeError, d.error().message));
    auto name = ep_.labels.name(d->message.label_id);
    const RecvAlt* alt = nullptr;
    if (name)
      for (const auto& a : p.recv_alts())
        if (a.label == *name) alt = &a;
    if (!alt)
      return unexpected(err(RuntimeError::Kind::UnknownLabel,
                            "label id " + std::to_string(d->message.label_id) + " from " + p.peer().name +
                                " is not offered"));
    auto v = decode_value(d->message.payload, alt->sort);
    if (!v)
      return unexpected(err(RuntimeError::Kind::DecodeError,
                            to_string(v.error().kind) + ": " + v.error().message));
    ValueAction a{Dir::Recv, ep_.self, p.peer(), alt->label, *v, alt->sort};
    if (!rec_.record(a)) {
      stop();
      return p;
    }
    log_.actions.push_back(std::move(a));
    env_.emplace_back(alt->var, *v);
    return alt->cont();
  }

  void stop() {
    stopped_ = true;
    log_.truncated = true;
  }

  const Endpoint& ep_;
  const ChannelMap& ch_;
  const HostRegistry& reg_;
  const RunOptions& opts_;
  Recorder& rec_;
  ExecutionLog log_;
  Env env_;
  std::vector<LoopFrame> loops_;
  bool stopped_ = false;
};

}  // namespace

Expected<LocalType, RuntimeError> validate_endpoint(const Endpoint& ep, const ChannelMap& channels,
                                                    const HostRegistry& registry) {
  TypingCtx ctx;
  ctx.externs = ep.externs;
  auto t = typecheck_proc(ctx, ep.proc);
  if (!t) return unexpected(err(RuntimeError::Kind::Untyped, t.error().rule + ": " + t.error().message));
  Uses u;
  collect(ep.proc, u);
  for (const auto& r : u.peers)
    if (!channels.count(r)) return unexpected(err(RuntimeError::Kind::MissingConnection, "no connection for " + r.name));
  for (const auto& l : u.labels)
    if (!ep.labels.id(l))
      return unexpected(err(RuntimeError::Kind::UnknownLabel, "label " + l.name + " is not in the protocol"));
  for (const auto& fn : u.fns) {
    const auto* h = registry.find(fn);
    if (!h) return unexpected(err(RuntimeError::Kind::RegistryMissing, "external function " + fn + " is not registered"));
    auto decl = ep.externs.find(fn);
    if (decl != ep.externs.end() && !(decl->second == h->first))
      return unexpected(err(RuntimeError::Kind::RegistryMissing,
                            "external function " + fn + " is registered with a different signature"));
  }
  return *t;
}

Expected<ExecutionLog, RuntimeError> run_endpoint(const Endpoint& ep, const ChannelMap& channels,
                                                  const HostRegistry& registry, const RunOptions& opts,
                                                  Recorder* recorder) {
  auto v = validate_endpoint(ep, channels, registry);
  if (!v) {
    for (auto& [_, c] : channels) c->close();
    return unexpected(v.error());
  }
  Recorder local(opts.max_actions);
  Interpreter in(ep, channels, registry, opts, recorder ? *recorder : local);
  return in.run();
}

}  // namespace mpst::runtime
