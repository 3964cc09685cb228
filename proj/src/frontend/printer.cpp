#include <algorithm>

#include "mpst/frontend/syntax.hpp"

namespace mpst::frontend {

std::string binder_name(std::size_t d) {
  static const char* const first[] = {"X", "Y", "Z", "W"};
  if (d < 4) return first[d];
  return "X" + std::to_string(d);
}

namespace {

using Scope = std::vector<std::string>;

// Picks a name for a new binder that does not capture anything in scope.
std::string fresh(const Scope& scope, std::string preferred) {
  if (preferred.empty()) preferred = binder_name(scope.size());
  while (std::find(scope.begin(), scope.end(), preferred) != scope.end()) preferred += '\'';
  return preferred;
}

std::string var_name(const Scope& scope, std::size_t i) {
  if (i < scope.size()) return scope[scope.size() - 1 - i];
  return "$" + std::to_string(i - scope.size());  // free, not parseable
}

template <class T, class F>
std::string branches(const std::vector<Branch<T>>& bs, F cont) {
  std::string s = "{ ";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) s += ", ";
    s += bs[i].label.name + "(" + bs[i].sort.to_string() + ") . " + cont(bs[i].cont);
  }
  return s + " }";
}

std::string global(const GlobalType& g, Scope& scope) {
  switch (g.kind()) {
    case GlobalType::Kind::End:
      return "end";
    case GlobalType::Kind::Var:
      return "continue " + var_name(scope, g.var_index());
    case GlobalType::Kind::Rec: {
      std::string x = fresh(scope, {});
      scope.push_back(x);
      std::string s = "rec " + x + " . " + global(g.body(), scope);
      scope.pop_back();
      return s;
    }
    case GlobalType::Kind::Msg:
      break;
  }
  return g.from().name + " -> " + g.to().name + " " +
         branches(g.branches(), [&](const GlobalType& k) { return global(k, scope); });
}

std::string local(const LocalType& l, Scope& scope) {
  switch (l.kind()) {
    case LocalType::Kind::End:
      return "end";
    case LocalType::Kind::Var:
      return "continue " + var_name(scope, l.var_index());
    case LocalType::Kind::Rec: {
      std::string x = fresh(scope, {});
      scope.push_back(x);
      std::string s = "rec " + x + " . " + local(l.body(), scope);
      scope.pop_back();
      return s;
    }
    case LocalType::Kind::Send:
    case LocalType::Kind::Recv:
      break;
  }
  return l.peer().name + (l.kind() == LocalType::Kind::Send ? " ! " : " ? ") +
         branches(l.branches(), [&](const LocalType& k) { return local(k, scope); });
}

std::string tree(const LocalTree& t) {
  switch (t.kind()) {
    case LocalTree::Kind::End:
      return "end";
    case LocalTree::Kind::Cut:
      return "...";
    case LocalTree::Kind::Send:
    case LocalTree::Kind::Recv:
      break;
  }
  return t.peer().name + (t.kind() == LocalTree::Kind::Send ? " ! " : " ? ") +
         branches(t.branches(), [](const LocalTree& k) { return tree(k); });
}

// Values print as expressions that parse back to the same literal.
std::string value(const Value& v, const Sort& s) {
  switch (v.kind()) {
    case Value::Kind::Nat:
      return std::to_string(v.as_nat());
    case Value::Kind::Int:
      return std::to_string(v.as_int()) + "i";
    case Value::Kind::Bool:
      return v.as_bool() ? "true" : "false";
    case Value::Kind::Unit:
      return "tt";
    case Value::Kind::Pair:
      return "(" + value(v.first(), s.left()) + ", " + value(v.second(), s.right()) + ")";
    case Value::Kind::Sum:
      return std::string(v.is_right() ? "inr[" : "inl[") + s.to_string() + "](" +
             value(v.payload(), v.is_right() ? s.right() : s.left()) + ")";
    case Value::Kind::Seq: {
      std::string out = "seq[" + s.elem().to_string() + "](";
      for (std::size_t i = 0; i < v.items().size(); ++i) {
        if (i) out += ", ";
        out += value(v.items()[i], s.elem());
      }
      return out + ")";
    }
  }
  return "?";
}

// Binding strength: 1 ||, 2 &&, 3 comparison, 4 + -, 5 * / %, 6 unary, 7 atom.
int level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Logic:
      return e.logic_op() == LogicOp::Or ? 1 : 2;
    case Expr::Kind::Cmp:
      return 3;
    case Expr::Kind::Arith:
      return e.arith_op() == ArithOp::Add || e.arith_op() == ArithOp::Sub ? 4 : 5;
    case Expr::Kind::Not:
      return 6;
    case Expr::Kind::Lit:
      return e.value().kind() == Value::Kind::Int && e.value().as_int() < 0 ? 6 : 7;
    default:
      return 7;
  }
}

std::string expr(const Expr& e, int min_level);

std::string expr_at(const Expr& e, int min_level) {
  std::string s = expr(e, min_level);
  return level(e) < min_level ? "(" + s + ")" : s;
}

const char* op_text(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Logic:
      return e.logic_op() == LogicOp::Or ? " || " : " && ";
    case Expr::Kind::Cmp:
      switch (e.cmp_op()) {
        case CmpOp::Eq: return " == ";
        case CmpOp::Ne: return " != ";
        case CmpOp::Lt: return " < ";
        case CmpOp::Le: return " <= ";
        case CmpOp::Gt: return " > ";
        case CmpOp::Ge: return " >= ";
      }
      break;
    case Expr::Kind::Arith:
      switch (e.arith_op()) {
        case ArithOp::Add: return " + ";
        case ArithOp::Sub: return " - ";
        case ArithOp::Mul: return " * ";
        case ArithOp::Div: return " / ";
        case ArithOp::Mod: return " % ";
      }
      break;
    default:
      break;
  }
  return " ? ";
}

std::string expr(const Expr& e, int) {
  switch (e.kind()) {
    case Expr::Kind::Lit:
      return value(e.value(), e.sort());
    case Expr::Kind::Var:
      return e.name();
    case Expr::Kind::Logic:
    case Expr::Kind::Arith: {
      const int l = level(e);
      return expr_at(e.args()[0], l) + op_text(e) + expr_at(e.args()[1], l + 1);
    }
    case Expr::Kind::Cmp:
      return expr_at(e.args()[0], 4) + op_text(e) + expr_at(e.args()[1], 4);
    case Expr::Kind::Not:
      return "!" + expr_at(e.args()[0], 6);
    case Expr::Kind::Pair:
      return "(" + expr(e.args()[0], 0) + ", " + expr(e.args()[1], 0) + ")";
    case Expr::Kind::Sum:
      return std::string(e.right() ? "inr[" : "inl[") + e.sort().to_string() + "](" + expr(e.args()[0], 0) + ")";
    case Expr::Kind::Seq: {
      std::string s = "seq[" + e.sort().to_string() + "](";
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) s += ", ";
        s += expr(e.args()[i], 0);
      }
      return s + ")";
    }
    case Expr::Kind::Extern: {
      const Expr& a = e.args()[0];
      if (a.kind() == Expr::Kind::Lit && a.value().kind() == Value::Kind::Unit) return "@" + e.name() + "()";
      return "@" + e.name() + "(" + expr(a, 0) + ")";
    }
  }
  return "?";
}

class ProcPrinter {
 public:
  std::string out;

  void line(std::size_t indent, const std::string& s) {
    out.append(indent * 2, ' ');
    out += s;
    out += '\n';
  }

  void proc(const Proc& p, std::size_t ind) {
    switch (p.kind()) {
      case Proc::Kind::Finish:
        line(ind, "finish");
        return;
      case Proc::Kind::Jump:
        line(ind, "jump " + var_name(scope_, p.jump_index()));
        return;
      case Proc::Kind::Loop: {
        std::string x = fresh(scope_, p.loop_name());
        line(ind, "loop " + x + " {");
        scope_.push_back(x);
        proc(p.cont(), ind + 1);
        scope_.pop_back();
        line(ind, "}");
        return;
      }
      case Proc::Kind::Send:
        line(ind, "send " + p.peer().name + " " + p.label().name + "(" + expr(p.expr(), 0) + " : " +
                      p.sort().to_string() + ");");
        proc(p.cont(), ind);
        return;
      case Proc::Kind::Recv: {
        const auto& alts = p.recv_alts();
        if (alts.size() == 1) {
          line(ind, "recv " + p.peer().name + " " + alt_head(alts[0]) + ";");
          proc(alts[0].cont(), ind);
          return;
        }
        line(ind, "branch " + p.peer().name + " {");
        for (const auto& a : alts) {
          line(ind, "| " + alt_head(a) + " =>");
          proc(a.cont(), ind + 1);
        }
        line(ind, "}");
        return;
      }
      case Proc::Kind::Select:
        line(ind, "select " + p.peer().name + " {");
        for (const auto& a : p.select_alts()) {
          const std::string payload = a.label.name + "(" + expr(a.payload, 0) + " : " + a.sort.to_string() + ");";
          switch (a.kind) {
            case SelectAlt::Kind::Case:
              line(ind, "| case " + expr(a.guard, 0) + " => " + payload);
              proc(a.cont(), ind + 1);
              break;
            case SelectAlt::Kind::Default:
              line(ind, "| default " + payload);
              proc(a.cont(), ind + 1);
              break;
            case SelectAlt::Kind::Skip:
              line(ind, "| skip " + a.label.name + "(" + a.sort.to_string() + ") => " + local(a.skip_type, scope_));
              break;
          }
        }
        line(ind, "}");
        return;
      case Proc::Kind::If:
        line(ind, "if " + expr(p.expr(), 0) + " then (");
        proc(p.cont(), ind + 1);
        line(ind, ") else (");
        proc(p.else_branch(), ind + 1);
        line(ind, ")");
        return;
      case Proc::Kind::Read:
        line(ind, "read " + p.fn() + " -> " + p.var() + " : " + p.sort().to_string() + ";");
        proc(p.cont(), ind);
        return;
      case Proc::Kind::Write:
        line(ind, "write " + p.fn() + "(" + expr(p.expr(), 0) + ");");
        proc(p.cont(), ind);
        return;
      case Proc::Kind::Interact:
        line(ind, "interact " + p.fn() + "(" + expr(p.expr(), 0) + ") -> " + p.var() + " : " + p.sort().to_string() +
                      ";");
        proc(p.cont(), ind);
        return;
    }
  }

 private:
  static std::string alt_head(const RecvAlt& a) {
    return a.label.name + "(" + a.var + " : " + a.sort.to_string() + ")";
  }
  Scope scope_;
};

}  // namespace

std::string pretty_sort(const Sort& s) { return s.to_string(); }

std::string pretty_global(const GlobalType& g) {
  Scope scope;
  return global(g, scope);
}

std::string pretty_local(const LocalType& l) {
  Scope scope;
  return local(l, scope);
}

std::string pretty_tree(const LocalTree& t) { return tree(t); }

std::string pretty_expr(const Expr& e) { return expr(e, 0); }

std::string pretty_proc(const Proc& p) {
  ProcPrinter pp;
  pp.proc(p, 0);
  return pp.out;
}

std::string pretty_proc_file(const ProcFile& f) {
  std::string out;
  for (const auto& [fn, sig] : f.externs)
    out += "extern " + fn + " : " + sig.arg.to_string() + " -> " + sig.result.to_string() + ";\n";
  if (!f.externs.empty()) out += "\n";
  return out + pretty_proc(f.proc);
}

}  // namespace mpst::frontend
