#include "mpst/process/typing.hpp"

#include <set>

#include "mpst/core/ops.hpp"

namespace mpst {

std::string to_string(TypeError::Kind k) {
  switch (k) {
    case TypeError::Kind::UnboundVariable: return "UnboundVariable";
    case TypeError::Kind::SortMismatch: return "SortMismatch";
    case TypeError::Kind::UnknownExtern: return "UnknownExtern";
    case TypeError::Kind::BranchTypeMismatch: return "BranchTypeMismatch";
    case TypeError::Kind::DuplicateLabel: return "DuplicateLabel";
    case TypeError::Kind::MissingDefault: return "MissingDefault";
    case TypeError::Kind::MultipleDefaults: return "MultipleDefaults";
    case TypeError::Kind::DefaultBeforeCase: return "DefaultBeforeCase";
    case TypeError::Kind::EmptyChoice: return "EmptyChoice";
    case TypeError::Kind::ExternSignatureMismatch: return "ExternSignatureMismatch";
    case TypeError::Kind::JumpOutOfScope: return "JumpOutOfScope";
    case TypeError::Kind::UnguardedLoop: return "UnguardedLoop";
  }
  return "?";
}

std::optional<Sort> TypingCtx::lookup(const std::string& name) const {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

TypingCtx TypingCtx::with(std::string name, Sort s) const {
  TypingCtx c = *this;
  c.vars.emplace_back(std::move(name), std::move(s));
  return c;
}

namespace {

Unexpected<TypeError> type_error(TypeError::Kind k, std::string rule, std::string msg) {
  return unexpected(TypeError{k, std::move(rule), std::move(msg)});
}

bool numeric(const Sort& s) { return s.kind() == Sort::Kind::Nat || s.kind() == Sort::Kind::Int; }

}  // namespace

Expected<Sort, TypeError> typecheck_expr(const TypingCtx& ctx, const Expr& e) {
  const char* rule = "expr";
  switch (e.kind()) {
    case Expr::Kind::Lit:
      if (!inhabits(e.value(), e.sort()))
        return type_error(TypeError::Kind::SortMismatch, rule,
                          "literal " + e.value().to_string() + " is not a " + e.sort().to_string());
      return e.sort();
    case Expr::Kind::Var: {
      auto s = ctx.lookup(e.name());
      if (!s) return type_error(TypeError::Kind::UnboundVariable, rule, "unbound variable " + e.name());
      return *s;
    }
    case Expr::Kind::Arith: {
      auto a = typecheck_expr(ctx, e.args()[0]);
      if (!a) return a;
      auto b = typecheck_expr(ctx, e.args()[1]);
      if (!b) return b;
      if (!numeric(*a) || *a != *b)
        return type_error(TypeError::Kind::SortMismatch, rule,
                          "arithmetic on " + a->to_string() + " and " + b->to_string());
      return *a;
    }
    case Expr::Kind::Cmp: {
      auto a = typecheck_expr(ctx, e.args()[0]);
      if (!a) return a;
      auto b = typecheck_expr(ctx, e.args()[1]);
      if (!b) return b;
      if (*a != *b)
        return type_error(TypeError::Kind::SortMismatch, rule,
                          "comparison of " + a->to_string() + " with " + b->to_string());
      const bool ordered = e.cmp_op() != CmpOp::Eq && e.cmp_op() != CmpOp::Ne;
      if (ordered && !numeric(*a) && a->kind() != Sort::Kind::Bool)
        return type_error(TypeError::Kind::SortMismatch, rule, "ordering on " + a->to_string());
      return Sort::boolean();
    }
    case Expr::Kind::Logic:
    case Expr::Kind::Not:
      for (const auto& x : e.args()) {
        auto s = typecheck_expr(ctx, x);
        if (!s) return s;
        if (s->kind() != Sort::Kind::Bool)
          return type_error(TypeError::Kind::SortMismatch, rule, "boolean operator on " + s->to_string());
      }
      return Sort::boolean();
    case Expr::Kind::Pair: {
      auto a = typecheck_expr(ctx, e.args()[0]);
      if (!a) return a;
      auto b = typecheck_expr(ctx, e.args()[1]);
      if (!b) return b;
      return Sort::pair(*a, *b);
    }
    case Expr::Kind::Sum: {
      if (e.sort().kind() != Sort::Kind::Sum)
        return type_error(TypeError::Kind::SortMismatch, rule, "injection annotated with " + e.sort().to_string());
      auto a = typecheck_expr(ctx, e.args()[0]);
      if (!a) return a;
      const Sort& want = e.right() ? e.sort().right() : e.sort().left();
      if (*a != want)
        return type_error(TypeError::Kind::SortMismatch, rule,
                          "injection of " + a->to_string() + " into " + e.sort().to_string());
      return e.sort();
    }
    case Expr::Kind::Seq:
      for (const auto& x : e.args()) {
        auto s = typecheck_expr(ctx, x);
        if (!s) return s;
        if (*s != e.sort())
          return type_error(TypeError::Kind::SortMismatch, rule,
                            "sequence of " + e.sort().to_string() + " holds " + s->to_string());
      }
      return Sort::seq(e.sort());
    case Expr::Kind::Extern: {
      auto it = ctx.externs.find(e.name());
      if (it == ctx.externs.end())
        return type_error(TypeError::Kind::UnknownExtern, rule, "unknown external function " + e.name());
      auto a = typecheck_expr(ctx, e.args()[0]);
      if (!a) return a;
      if (*a != it->second.arg)
        return type_error(TypeError::Kind::ExternSignatureMismatch, rule,
                          e.name() + " expects " + it->second.arg.to_string() + ", got " + a->to_string());
      return it->second.result;
    }
  }
  return type_error(TypeError::Kind::SortMismatch, rule, "unknown expression");
}

namespace {

struct ProcChecker {
  Expected<LocalType, TypeError> run(const TypingCtx& ctx, const Proc& p, std::size_t loops) {
    switch (p.kind()) {
      case Proc::Kind::Finish: return LocalType::end();
      case Proc::Kind::Jump:
        if (p.jump_index() >= loops)
          return type_error(TypeError::Kind::JumpOutOfScope, "p-ty-jump",
                            "jump to loop " + std::to_string(p.jump_index()) + " outside of any loop");
        return LocalType::var(p.jump_index());
      case Proc::Kind::Loop: {
        auto body = run(ctx, p.cont(), loops + 1);
        if (!body) return body;
        if (body->kind() == LocalType::Kind::Var || pure_rec(*body))
          return type_error(TypeError::Kind::UnguardedLoop, "p-ty-loop",
                            "loop body reaches a jump without communicating");
        return LocalType::rec(*body);
      }
      case Proc::Kind::Recv: {
        if (p.recv_alts().empty())
          return type_error(TypeError::Kind::EmptyChoice, "p-ty-recv", "receive with no alternatives");
        std::set<Label> seen;
        LocalType::Branches bs;
        for (const auto& a : p.recv_alts()) {
          if (!seen.insert(a.label).second)
            return type_error(TypeError::Kind::DuplicateLabel, "p-ty-recv", "label " + a.label.name + " repeated");
          auto t = run(ctx.with(a.var, a.sort), a.cont(), loops);
          if (!t) return t;
          bs.push_back({a.label, a.sort, *t});
        }
        return LocalType::recv(p.peer(), std::move(bs));
      }
      case Proc::Kind::Send: {
        auto s = typecheck_expr(ctx, p.expr());
        if (!s) return unexpected(s.error());
        if (*s != p.sort())
          return type_error(TypeError::Kind::SortMismatch, "p-ty-send",
                            "payload of " + p.label().name + " has sort " + s->to_string() + ", declared " +
                                p.sort().to_string());
        auto t = run(ctx, p.cont(), loops);
        if (!t) return t;
        return LocalType::send(p.peer(), {{p.label(), p.sort(), *t}});
      }
      case Proc::Kind::Select: return select(ctx, p, loops);
      case Proc::Kind::If: {
        auto c = typecheck_expr(ctx, p.expr());
        if (!c) return unexpected(c.error());
        if (c->kind() != Sort::Kind::Bool)
          return type_error(TypeError::Kind::SortMismatch, "if", "condition has sort " + c->to_string());
        auto a = run(ctx, p.cont(), loops);
        if (!a) return a;
        auto b = run(ctx, p.else_branch(), loops);
        if (!b) return b;
        if (!(*a == *b))
          return type_error(TypeError::Kind::BranchTypeMismatch, "if", "branches of if have different types");
        return *a;
      }
      case Proc::Kind::Read: {
        auto sig = signature(ctx, p.fn(), "p-ty-read");
        if (!sig) return unexpected(sig.error());
        if (sig->arg != Sort::unit() || sig->result != p.sort())
          return type_error(TypeError::Kind::ExternSignatureMismatch, "p-ty-read",
                            p.fn() + " does not have signature unit -> " + p.sort().to_string());
        return run(ctx.with(p.var(), p.sort()), p.cont(), loops);
      }
      case Proc::Kind::Write: {
        auto sig = signature(ctx, p.fn(), "p-ty-write");
        if (!sig) return unexpected(sig.error());
        auto s = typecheck_expr(ctx, p.expr());
        if (!s) return unexpected(s.error());
        if (sig->arg != *s || sig->result != Sort::unit())
          return type_error(TypeError::Kind::ExternSignatureMismatch, "p-ty-write",
                            p.fn() + " does not have signature " + s->to_string() + " -> unit");
        return run(ctx, p.cont(), loops);
      }
      case Proc::Kind::Interact: {
        auto sig = signature(ctx, p.fn(), "p-ty-interact");
        if (!sig) return unexpected(sig.error());
        auto s = typecheck_expr(ctx, p.expr());
        if (!s) return unexpected(s.error());
        if (sig->arg != *s || sig->result != p.sort())
          return type_error(TypeError::Kind::ExternSignatureMismatch, "p-ty-interact",
                            p.fn() + " does not have signature " + s->to_string() + " -> " + p.sort().to_string());
        return run(ctx.with(p.var(), p.sort()), p.cont(), loops);
      }
    }
    return type_error(TypeError::Kind::SortMismatch, "p-ty", "unknown process");
  }

  Expected<ExternSig, TypeError> signature(const TypingCtx& ctx, const std::string& fn, const char* rule) {
    auto it = ctx.externs.find(fn);
    if (it == ctx.externs.end())
      return type_error(TypeError::Kind::UnknownExtern, rule, "unknown external function " + fn);
    return it->second;
  }

  Expected<LocalType, TypeError> select(const TypingCtx& ctx, const Proc& p, std::size_t loops) {
    std::set<Label> seen;
    LocalType::Branches bs;
    std::size_t defaults = 0;
    for (const auto& a : p.select_alts()) {
      if (!seen.insert(a.label).second)
        return type_error(TypeError::Kind::DuplicateLabel, "p-ty-send", "label " + a.label.name + " repeated");
      if (a.kind == SelectAlt::Kind::Skip) {
        if (a.skip_type.free_bound() > loops)
          return type_error(TypeError::Kind::JumpOutOfScope, "p-ty-send",
                            "skip type of " + a.label.name + " refers to an unknown loop");
        bs.push_back({a.label, a.sort, a.skip_type});
        continue;
      }
      if (a.kind == SelectAlt::Kind::Default) {
        if (++defaults > 1)
          return type_error(TypeError::Kind::MultipleDefaults, "p-ty-send", "select has more than one default");
      } else {
        if (defaults > 0)
          return type_error(TypeError::Kind::DefaultBeforeCase, "p-ty-send", "case after the default alternative");
        auto g = typecheck_expr(ctx, a.guard);
        if (!g) return unexpected(g.error());
        if (g->kind() != Sort::Kind::Bool)
          return type_error(TypeError::Kind::SortMismatch, "p-ty-send", "guard has sort " + g->to_string());
      }
      auto s = typecheck_expr(ctx, a.payload);
      if (!s) return unexpected(s.error());
      if (*s != a.sort)
        return type_error(TypeError::Kind::SortMismatch, "p-ty-send",
                          "payload of " + a.label.name + " has sort " + s->to_string() + ", declared " +
                              a.sort.to_string());
      auto t = run(ctx, a.cont(), loops);
      if (!t) return t;
      bs.push_back({a.label, a.sort, *t});
    }
    if (defaults == 0)
      return type_error(TypeError::Kind::MissingDefault, "p-ty-send", "select without a default alternative");
    return LocalType::send(p.peer(), std::move(bs));
  }
};

}  // namespace

Expected<LocalType, TypeError> typecheck_proc(const TypingCtx& ctx, const Proc& p) {
  ProcChecker c;
  return c.run(ctx, p, 0);
}

bool ltype_equiv_bounded(const LocalType& a, const LocalType& b, std::size_t depth) {
  return local_tree_expand(a, depth) == local_tree_expand(b, depth);
}

}  // namespace mpst
