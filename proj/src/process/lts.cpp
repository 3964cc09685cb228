#include "mpst/process/lts.hpp"

#include "mpst/core/ops.hpp"
#include "mpst/process/eval.hpp"

namespace mpst {

Action erase(const ValueAction& a) { return Action{a.dir, a.subj, a.other, a.label, a.sort}; }

Trace erase(const ValueTrace& t) {
  Trace out;
  out.reserve(t.size());
  for (const auto& a : t) out.push_back(erase(a));
  return out;
}

std::string to_string(const ValueAction& a) {
  std::string s = a.dir == Dir::Send ? "!" : "?";
  return s + a.subj.name + "," + a.other.name + "(" + a.label.name + "," + a.value.to_string() + ")";
}

std::string to_string(ProcError::Kind k) {
  switch (k) {
    case ProcError::Kind::NotEnabled: return "NotEnabled";
    case ProcError::Kind::LabelNotOffered: return "LabelNotOffered";
    case ProcError::Kind::EvaluationError: return "EvaluationError";
  }
  return "?";
}

void StubRegistry::add(std::string name, ExternSig sig, StubFn fn) { fns_[std::move(name)] = {sig, fn}; }

const StubFn* StubRegistry::find(const std::string& name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : &it->second.second;
}

ExternSigs StubRegistry::signatures() const {
  ExternSigs out;
  for (const auto& [name, entry] : fns_) out.emplace(name, entry.first);
  return out;
}

// ---------------------------------------------------------------- substitution

namespace {

Expr subst_expr(const Expr& e, const std::string& var, const Expr& lit) {
  switch (e.kind()) {
    case Expr::Kind::Lit: return e;
    case Expr::Kind::Var: return e.name() == var ? lit : e;
    default: break;
  }
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(subst_expr(a, var, lit));
  switch (e.kind()) {
    case Expr::Kind::Arith: return Expr::arith(e.arith_op(), args[0], args[1]);
    case Expr::Kind::Cmp: return Expr::cmp(e.cmp_op(), args[0], args[1]);
    case Expr::Kind::Logic: return Expr::logic(e.logic_op(), args[0], args[1]);
    case Expr::Kind::Not: return Expr::negate(args[0]);
    case Expr::Kind::Pair: return Expr::pair(args[0], args[1]);
    case Expr::Kind::Sum: return Expr::sum(e.right(), e.sort(), args[0]);
    case Expr::Kind::Seq: return Expr::seq(e.sort(), std::move(args));
    case Expr::Kind::Extern: return Expr::call(e.name(), args[0]);
    default: return e;
  }
}

// Generic rebuild of a process with mapped expressions, continuations and
// skip types. `binds` tells whether a continuation shadows the variable.
template <class ExprFn, class ProcFn, class SkipFn>
Proc rebuild(const Proc& p, ExprFn ex, ProcFn pr, SkipFn sk) {
  switch (p.kind()) {
    case Proc::Kind::Finish:
    case Proc::Kind::Jump: return p;
    case Proc::Kind::Loop: return Proc::loop(pr(p.cont(), nullptr, true), p.loop_name());
    case Proc::Kind::Recv: {
      std::vector<RecvAlt> alts;
      for (const auto& a : p.recv_alts()) alts.push_back(Proc::alt(a.label, a.var, a.sort, pr(a.cont(), &a.var, false)));
      return Proc::recv(p.peer(), std::move(alts));
    }
    case Proc::Kind::Send:
      return Proc::send(p.peer(), p.label(), ex(p.expr()), p.sort(), pr(p.cont(), nullptr, false));
    case Proc::Kind::Select: {
      std::vector<SelectAlt> alts;
      for (const auto& a : p.select_alts()) {
        switch (a.kind) {
          case SelectAlt::Kind::Case:
            alts.push_back(Proc::case_alt(ex(a.guard), a.label, ex(a.payload), a.sort, pr(a.cont(), nullptr, false)));
            break;
          case SelectAlt::Kind::Default:
            alts.push_back(Proc::default_alt(a.label, ex(a.payload), a.sort, pr(a.cont(), nullptr, false)));
            break;
          case SelectAlt::Kind::Skip: alts.push_back(Proc::skip_alt(a.label, a.sort, sk(a.skip_type))); break;
        }
      }
      return Proc::select(p.peer(), std::move(alts));
    }
    case Proc::Kind::If:
      return Proc::if_then_else(ex(p.expr()), pr(p.cont(), nullptr, false), pr(p.else_branch(), nullptr, false));
    case Proc::Kind::Read: return Proc::read(p.fn(), p.var(), p.sort(), pr(p.cont(), &p.var(), false));
    case Proc::Kind::Write: return Proc::write(p.fn(), ex(p.expr()), pr(p.cont(), nullptr, false));
    case Proc::Kind::Interact:
      return Proc::interact(p.fn(), ex(p.expr()), p.var(), p.sort(), pr(p.cont(), &p.var(), false));
  }
  return p;
}

Proc subst_var(const Proc& p, const std::string& var, const Expr& lit) {
  return rebuild(
      p, [&](const Expr& e) { return subst_expr(e, var, lit); },
      [&](const Proc& k, const std::string* bound, bool) {
        if (bound && *bound == var) return k;
        return subst_var(k, var, lit);
      },
      [](const LocalType& t) { return t; });
}

// Replaces Jump(level) by `loop` and the matching type variable in skip
// types by `loop_type`, `level` counting the loops entered below the
// unfolded one.
Proc subst_loop(const Proc& p, std::size_t level, const Proc& loop, const LocalType& loop_type) {
  if (p.kind() == Proc::Kind::Jump) return p.jump_index() == level ? loop : p;
  return rebuild(
      p, [](const Expr& e) { return e; },
      [&](const Proc& k, const std::string*, bool enters_loop) {
        return subst_loop(k, enters_loop ? level + 1 : level, loop, loop_type);
      },
      [&](const LocalType& t) { return subst(t, level, loop_type); });
}

ProcError eval_error(std::string msg) { return ProcError{ProcError::Kind::EvaluationError, std::move(msg)}; }

Expected<Value, ProcError> eval_closed(const Expr& e, const StubRegistry& stubs) {
  auto v = evaluate(e, nullptr, [&](const std::string& fn, const Value& arg) -> Expected<Value, std::string> {
    const StubFn* f = stubs.find(fn);
    if (!f) return unexpected("no stub for " + fn);
    return (*f)(arg);
  });
  if (!v) return unexpected(eval_error(v.error()));
  return *v;
}

Expected<Value, ProcError> call_stub(const StubRegistry& stubs, const std::string& fn, const Value& arg,
                                     const Sort& result) {
  const StubFn* f = stubs.find(fn);
  if (!f) return unexpected(eval_error("no stub for " + fn));
  Value v = (*f)(arg);
  if (!inhabits(v, result)) return unexpected(eval_error(fn + " returned a value outside " + result.to_string()));
  return v;
}

constexpr std::size_t kMaxInternalSteps = 100000;

}  // namespace

Proc subst_value(const Proc& p, const std::string& var, const Value& v, const Sort& s) {
  return subst_var(p, var, Expr::lit(v, s));
}

Expected<ProcHead, ProcError> proc_normalize(const Proc& p, const StubRegistry& stubs) {
  Proc cur = p;
  for (std::size_t i = 0; i < kMaxInternalSteps; ++i) {
    switch (cur.kind()) {
      case Proc::Kind::Finish: return ProcHead{};
      case Proc::Kind::Jump: return unexpected(eval_error("jump outside of a loop"));
      case Proc::Kind::Loop: {
        TypingCtx ctx;
        ctx.externs = stubs.signatures();
        auto t = typecheck_proc(ctx, cur);
        if (!t) return unexpected(eval_error("loop is not well typed: " + t.error().message));
        cur = subst_loop(cur.cont(), 0, cur, *t);
        break;
      }
      case Proc::Kind::Recv: {
        ProcHead h;
        h.kind = ProcHead::Kind::Recv;
        h.peer = cur.peer();
        h.proc = cur;
        return h;
      }
      case Proc::Kind::Send: {
        auto v = eval_closed(cur.expr(), stubs);
        if (!v) return unexpected(v.error());
        return ProcHead{ProcHead::Kind::Send, cur.peer(), cur.label(), *v, cur.sort(), cur.cont()};
      }
      case Proc::Kind::Select: {
        const SelectAlt* fire = nullptr;
        for (const auto& a : cur.select_alts()) {
          if (a.kind == SelectAlt::Kind::Skip) continue;
          if (a.kind == SelectAlt::Kind::Default) {
            fire = &a;
            break;
          }
          auto g = eval_closed(a.guard, stubs);
          if (!g) return unexpected(g.error());
          if (g->as_bool()) {
            fire = &a;
            break;
          }
        }
        if (!fire) return unexpected(eval_error("select without a firing alternative"));
        auto v = eval_closed(fire->payload, stubs);
        if (!v) return unexpected(v.error());
        return ProcHead{ProcHead::Kind::Send, cur.peer(), fire->label, *v, fire->sort, fire->cont()};
      }
      case Proc::Kind::If: {
        auto c = eval_closed(cur.expr(), stubs);
        if (!c) return unexpected(c.error());
        cur = c->as_bool() ? cur.cont() : cur.else_branch();
        break;
      }
      case Proc::Kind::Read: {
        auto v = call_stub(stubs, cur.fn(), Value::unit(), cur.sort());
        if (!v) return unexpected(v.error());
        cur = subst_value(cur.cont(), cur.var(), *v, cur.sort());
        break;
      }
      case Proc::Kind::Write: {
        auto a = eval_closed(cur.expr(), stubs);
        if (!a) return unexpected(a.error());
        auto v = call_stub(stubs, cur.fn(), *a, Sort::unit());
        if (!v) return unexpected(v.error());
        cur = cur.cont();
        break;
      }
      case Proc::Kind::Interact: {
        auto a = eval_closed(cur.expr(), stubs);
        if (!a) return unexpected(a.error());
        auto v = call_stub(stubs, cur.fn(), *a, cur.sort());
        if (!v) return unexpected(v.error());
        cur = subst_value(cur.cont(), cur.var(), *v, cur.sort());
        break;
      }
    }
  }
  return unexpected(eval_error("too many internal steps"));
}

Expected<Proc, ProcError> proc_step(const Proc& p, const ValueAction& a, const StubRegistry& stubs) {
  auto h = proc_normalize(p, stubs);
  if (!h) return unexpected(h.error());
  switch (h->kind) {
    case ProcHead::Kind::Finish:
      return unexpected(ProcError{ProcError::Kind::NotEnabled, "process has finished"});
    case ProcHead::Kind::Send:
      if (a.dir != Dir::Send || a.other != h->peer)
        return unexpected(ProcError{ProcError::Kind::NotEnabled, "process is sending to " + h->peer.name});
      if (a.label != h->label)
        return unexpected(ProcError{ProcError::Kind::LabelNotOffered, "process sends " + h->label.name});
      if (a.value != h->value || a.sort != h->sort)
        return unexpected(ProcError{ProcError::Kind::NotEnabled, "process sends " + h->value.to_string()});
      return h->proc;
    case ProcHead::Kind::Recv: {
      if (a.dir != Dir::Recv || a.other != h->peer)
        return unexpected(ProcError{ProcError::Kind::NotEnabled, "process is receiving from " + h->peer.name});
      for (const auto& alt : h->proc.recv_alts()) {
        if (alt.label != a.label) continue;
        if (alt.sort != a.sort || !inhabits(a.value, alt.sort))
          return unexpected(ProcError{ProcError::Kind::NotEnabled, "payload does not have sort " + alt.sort.to_string()});
        return subst_value(alt.cont(), alt.var, a.value, alt.sort);
      }
      return unexpected(ProcError{ProcError::Kind::LabelNotOffered, "label " + a.label.name + " is not offered"});
    }
  }
  return unexpected(ProcError{ProcError::Kind::NotEnabled, "unknown head"});
}

Expected<std::vector<ProcStep>, ProcError> proc_enabled(const Proc& p, const Role& self, const StubRegistry& stubs,
                                                        const ValueUniverse& universe) {
  auto h = proc_normalize(p, stubs);
  if (!h) return unexpected(h.error());
  std::vector<ProcStep> out;
  if (h->kind == ProcHead::Kind::Send) {
    out.push_back({ValueAction{Dir::Send, self, h->peer, h->label, h->value, h->sort}, h->proc});
  } else if (h->kind == ProcHead::Kind::Recv) {
    for (const auto& alt : h->proc.recv_alts())
      for (const auto& v : universe.values_of(alt.sort))
        out.push_back({ValueAction{Dir::Recv, self, h->peer, alt.label, v, alt.sort},
                       subst_value(alt.cont(), alt.var, v, alt.sort)});
  }
  return out;
}

namespace {
std::optional<ProcError> explore(const Proc& p, const Role& self, std::size_t depth, const StubRegistry& stubs,
                                 const ValueUniverse& universe, ValueTrace& cur, ProcTraces& out) {
  out.prefixes.insert(cur);
  auto h = proc_normalize(p, stubs);
  if (!h) return h.error();
  if (h->kind == ProcHead::Kind::Finish) {
    out.completed.insert(cur);
    return std::nullopt;
  }
  if (cur.size() >= depth) return std::nullopt;
  auto steps = proc_enabled(p, self, stubs, universe);
  if (!steps) return steps.error();
  for (const auto& s : *steps) {
    cur.push_back(s.action);
    auto e = explore(s.next, self, depth, stubs, universe, cur, out);
    cur.pop_back();
    if (e) return e;
  }
  return std::nullopt;
}
}  // namespace

Expected<ProcTraces, ProcError> proc_traces(const Proc& p, const Role& self, std::size_t depth,
                                            const StubRegistry& stubs, const ValueUniverse& universe) {
  ProcTraces out;
  ValueTrace cur;
  if (auto e = explore(p, self, depth, stubs, universe, cur, out)) return unexpected(*e);
  return out;
}

}  // namespace mpst
