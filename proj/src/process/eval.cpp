#include "mpst/process/eval.hpp"

namespace mpst {

namespace {

Expected<Value, std::string> nat_arith(ArithOp op, std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = 0;
  switch (op) {
    case ArithOp::Add: r = static_cast<unsigned __int128>(a) + b; break;
    case ArithOp::Sub: r = a >= b ? a - b : 0; break;
    case ArithOp::Mul: r = static_cast<unsigned __int128>(a) * b; break;
    case ArithOp::Div:
      if (b == 0) return unexpected(std::string("division by zero"));
      r = a / b;
      break;
    case ArithOp::Mod:
      if (b == 0) return unexpected(std::string("division by zero"));
      r = a % b;
      break;
  }
  if (r > kNatMax) return unexpected(std::string("nat overflow"));
  return Value::nat(static_cast<std::uint64_t>(r));
}

Expected<Value, std::string> int_arith(ArithOp op, std::int64_t a, std::int64_t b) {
  __int128 r = 0;
  switch (op) {
    case ArithOp::Add: r = static_cast<__int128>(a) + b; break;
    case ArithOp::Sub: r = static_cast<__int128>(a) - b; break;
    case ArithOp::Mul: r = static_cast<__int128>(a) * b; break;
    case ArithOp::Div:
    case ArithOp::Mod:
      if (b == 0) return unexpected(std::string("division by zero"));
      r = op == ArithOp::Div ? static_cast<__int128>(a) / b : static_cast<__int128>(a) % b;
      break;
  }
  if (r > std::numeric_limits<std::int64_t>::max() || r < std::numeric_limits<std::int64_t>::min())
    return unexpected(std::string("int overflow"));
  return Value::integer(static_cast<std::int64_t>(r));
}

bool compare(CmpOp op, const Value& a, const Value& b) {
  auto c = a <=> b;
  switch (op) {
    case CmpOp::Eq: return c == 0;
    case CmpOp::Ne: return c != 0;
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Gt: return c > 0;
    case CmpOp::Ge: return c >= 0;
  }
  return false;
}

}  // namespace

Expected<Value, std::string> evaluate(const Expr& e, const VarLookup& vars, const ExternCall& call) {
  switch (e.kind()) {
    case Expr::Kind::Lit: return e.value();
    case Expr::Kind::Var: {
      auto v = vars ? vars(e.name()) : std::nullopt;
      if (!v) return unexpected("unbound variable " + e.name());
      return *v;
    }
    case Expr::Kind::Not: {
      auto a = evaluate(e.args()[0], vars, call);
      if (!a) return a;
      return Value::boolean(!a->as_bool());
    }
    case Expr::Kind::Logic: {
      auto a = evaluate(e.args()[0], vars, call);
      if (!a) return a;
      const bool is_and = e.logic_op() == LogicOp::And;
      if (a->as_bool() != is_and) return Value::boolean(a->as_bool());
      return evaluate(e.args()[1], vars, call);
    }
    case Expr::Kind::Extern: {
      auto a = evaluate(e.args()[0], vars, call);
      if (!a) return a;
      if (!call) return unexpected("no external registry for " + e.name());
      return call(e.name(), *a);
    }
    case Expr::Kind::Sum: {
      auto a = evaluate(e.args()[0], vars, call);
      if (!a) return a;
      return e.right() ? Value::inr(*a) : Value::inl(*a);
    }
    case Expr::Kind::Seq: {
      std::vector<Value> items;
      for (const auto& x : e.args()) {
        auto v = evaluate(x, vars, call);
        if (!v) return v;
        items.push_back(std::move(*v));
      }
      return Value::seq(std::move(items));
    }
    default: break;
  }
  auto a = evaluate(e.args()[0], vars, call);
  if (!a) return a;
  auto b = evaluate(e.args()[1], vars, call);
  if (!b) return b;
  switch (e.kind()) {
    case Expr::Kind::Pair: return Value::pair(*a, *b);
    case Expr::Kind::Cmp: return Value::boolean(compare(e.cmp_op(), *a, *b));
    case Expr::Kind::Arith:
      if (a->kind() == Value::Kind::Nat && b->kind() == Value::Kind::Nat)
        return nat_arith(e.arith_op(), a->as_nat(), b->as_nat());
      if (a->kind() == Value::Kind::Int && b->kind() == Value::Kind::Int)
        return int_arith(e.arith_op(), a->as_int(), b->as_int());
      return unexpected(std::string("arithmetic on non-numeric values"));
    default: break;
  }
  return unexpected(std::string("cannot evaluate expression"));
}

}  // namespace mpst
