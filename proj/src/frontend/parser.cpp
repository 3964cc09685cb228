#include <set>

#include "lexer.hpp"
#include "mpst/frontend/syntax.hpp"

namespace mpst::frontend {

std::string to_string(const Diagnostic& d) {
  std::string s;
  if (!d.file.empty()) s += d.file + ":";
  if (d.line) s += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
  s += d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
  s += d.message;
  if (!d.rule.empty()) s += " [" + d.rule + "]";
  return s;
}

namespace {

struct ParseError {
  std::size_t line;
  std::size_t column;
  std::string message;
};

const std::set<std::string> kReservedExpr = {"true", "false", "tt", "inl", "inr", "seq"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  // ---------------------------------------------------------------- helpers
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Punct && peek(k).text == p;
  }
  bool is_word(const char* w, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == w;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError{t.line, t.column, msg + ", found " + got};
  }
  void expect(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    ++pos_;
  }
  bool accept(const char* p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(std::string("expected '") + w + "'");
    ++pos_;
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

  // Binder names in scope, innermost last; shared by process loops and
  // recursion variables of (skip) local types.
  std::vector<std::string> scope_;

  std::size_t resolve(const std::string& name) {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == name) return scope_.size() - 1 - i;
    --pos_;
    fail("unbound name " + name);
  }

  // ------------------------------------------------------------------ sorts
  Sort sort() {
    std::string w = ident("a sort");
    if (w == "nat") return Sort::nat();
    if (w == "int") return Sort::integer();
    if (w == "bool") return Sort::boolean();
    if (w == "unit") return Sort::unit();
    if (w == "pair" || w == "sum") {
      expect("(");
      Sort a = sort();
      expect(",");
      Sort b = sort();
      expect(")");
      return w == "pair" ? Sort::pair(a, b) : Sort::sum(a, b);
    }
    if (w == "seq") {
      expect("(");
      Sort a = sort();
      expect(")");
      return Sort::seq(a);
    }
    --pos_;
    fail("expected a sort");
  }

  // ----------------------------------------------------------- global types
  GlobalType global() {
    if (is_word("end")) {
      ++pos_;
      return GlobalType::end();
    }
    if (is_word("continue")) {
      ++pos_;
      return GlobalType::var(resolve(ident("a recursion variable")));
    }
    if (is_word("rec")) {
      ++pos_;
      std::string x = ident("a recursion variable");
      expect(".");
      scope_.push_back(x);
      GlobalType body = global();
      scope_.pop_back();
      return GlobalType::rec(body);
    }
    Role from{ident("a role, 'rec', 'continue' or 'end'")};
    expect("->");
    Role to{ident("a role")};
    auto bs = branches<GlobalType>([this] { return global(); });
    return GlobalType::msg(from, to, std::move(bs));
  }

  template <class T, class F>
  std::vector<Branch<T>> branches(F cont) {
    std::vector<Branch<T>> out;
    std::set<std::string> seen;
    auto one = [&] {
      const Token& at = peek();
      Label l{ident("a label")};
      if (!seen.insert(l.name).second) throw ParseError{at.line, at.column, "duplicate label " + l.name};
      expect("(");
      Sort s = sort();
      expect(")");
      expect(".");
      out.push_back({l, s, cont()});
    };
    if (accept("{")) {
      one();
      while (accept(",")) one();
      expect("}");
    } else {
      one();
    }
    return out;
  }

  // ------------------------------------------------------------ local types
  LocalType local() {
    if (is_word("end")) {
      ++pos_;
      return LocalType::end();
    }
    if (is_word("continue")) {
      ++pos_;
      return LocalType::var(resolve(ident("a recursion variable")));
    }
    if (is_word("rec")) {
      ++pos_;
      std::string x = ident("a recursion variable");
      expect(".");
      scope_.push_back(x);
      LocalType body = local();
      scope_.pop_back();
      return LocalType::rec(body);
    }
    Role peer{ident("a role, 'rec', 'continue' or 'end'")};
    if (accept("!")) return LocalType::send(peer, branches<LocalType>([this] { return local(); }));
    if (accept("?")) return LocalType::recv(peer, branches<LocalType>([this] { return local(); }));
    fail("expected '!' or '?'");
  }

  // ------------------------------------------------------------ expressions
  Expr expr() { return or_expr(); }

  Expr or_expr() {
    Expr e = and_expr();
    while (accept("||")) e = Expr::logic(LogicOp::Or, e, and_expr());
    return e;
  }

  Expr and_expr() {
    Expr e = cmp_expr();
    while (accept("&&")) e = Expr::logic(LogicOp::And, e, cmp_expr());
    return e;
  }

  Expr cmp_expr() {
    Expr e = add_expr();
    static const std::pair<const char*, CmpOp> ops[] = {{"==", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<=", CmpOp::Le},
                                                        {">=", CmpOp::Ge}, {"<", CmpOp::Lt},  {">", CmpOp::Gt}};
    for (const auto& [p, op] : ops)
      if (accept(p)) return Expr::cmp(op, e, add_expr());
    return e;
  }

  Expr add_expr() {
    Expr e = mul_expr();
    while (true) {
      if (accept("+")) {
        e = Expr::arith(ArithOp::Add, e, mul_expr());
      } else if (accept("-")) {
        e = Expr::arith(ArithOp::Sub, e, mul_expr());
      } else {
        return e;
      }
    }
  }

  Expr mul_expr() {
    Expr e = unary_expr();
    while (true) {
      if (accept("*")) {
        e = Expr::arith(ArithOp::Mul, e, unary_expr());
      } else if (accept("/")) {
        e = Expr::arith(ArithOp::Div, e, unary_expr());
      } else if (accept("%")) {
        e = Expr::arith(ArithOp::Mod, e, unary_expr());
      } else {
        return e;
      }
    }
  }

  Expr unary_expr() {
    if (accept("!")) return Expr::negate(unary_expr());
    if (is_punct("-") && peek(1).kind == Token::Kind::Int) {
      ++pos_;
      return int_literal(true);
    }
    return atom();
  }

  Expr int_literal(bool negative) {
    const Token& t = toks_[pos_++];
    unsigned long long v = 0;
    try {
      v = std::stoull(t.text);
    } catch (...) {
      throw ParseError{t.line, t.column, "integer literal out of range"};
    }
    const unsigned long long lim = negative ? 9223372036854775808ULL : 9223372036854775807ULL;
    if (v > lim) throw ParseError{t.line, t.column, "integer literal out of range"};
    std::int64_t x = negative ? static_cast<std::int64_t>(0 - v) : static_cast<std::int64_t>(v);
    return Expr::lit(Value::integer(x), Sort::integer());
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Nat) {
      ++pos_;
      unsigned long long v = 0;
      try {
        v = std::stoull(t.text);
      } catch (...) {
        throw ParseError{t.line, t.column, "nat literal out of range"};
      }
      if (v > kNatMax) throw ParseError{t.line, t.column, "nat literal out of range"};
      return Expr::lit(Value::nat(v), Sort::nat());
    }
    if (t.kind == Token::Kind::Int) return int_literal(false);
    if (accept("(")) {
      Expr a = expr();
      if (accept(",")) {
        Expr b = expr();
        expect(")");
        return Expr::pair(a, b);
      }
      expect(")");
      return a;
    }
    if (accept("@")) {
      std::string fn = ident("an external function name");
      expect("(");
      Expr a = is_punct(")") ? Expr() : expr();
      expect(")");
      return Expr::call(fn, a);
    }
    if (t.kind != Token::Kind::Ident) fail("expected an expression");
    ++pos_;
    if (t.text == "true" || t.text == "false") return Expr::lit(Value::boolean(t.text == "true"), Sort::boolean());
    if (t.text == "tt") return Expr::lit(Value::unit(), Sort::unit());
    if (t.text == "inl" || t.text == "inr") {
      expect("[");
      Sort s = sort();
      expect("]");
      expect("(");
      Expr a = expr();
      expect(")");
      return Expr::sum(t.text == "inr", s, a);
    }
    if (t.text == "seq") {
      expect("[");
      Sort s = sort();
      expect("]");
      expect("(");
      std::vector<Expr> items;
      if (!is_punct(")")) {
        items.push_back(expr());
        while (accept(",")) items.push_back(expr());
      }
      expect(")");
      return Expr::seq(s, std::move(items));
    }
    return Expr::var(t.text);
  }

  std::string binder() {
    std::string x = ident("a variable name");
    if (kReservedExpr.count(x)) {
      --pos_;
      fail("reserved word used as a variable");
    }
    return x;
  }

  // -------------------------------------------------------------- processes
  Proc proc() {
    if (accept("(")) {
      Proc p = proc();
      expect(")");
      return p;
    }
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a process");
    const std::string w = t.text;
    ++pos_;
    if (w == "finish") return Proc::finish();
    if (w == "jump") return Proc::jump(resolve(ident("a loop name")));
    if (w == "loop") {
      std::string x = ident("a loop name");
      expect("{");
      scope_.push_back(x);
      Proc body = proc();
      scope_.pop_back();
      expect("}");
      return Proc::loop(body, x);
    }
    if (w == "send") {
      Role peer{ident("a role")};
      Label l{ident("a label")};
      expect("(");
      Expr e = expr();
      expect(":");
      Sort s = sort();
      expect(")");
      expect(";");
      return Proc::send(peer, l, e, s, proc());
    }
    if (w == "recv") {
      Role peer{ident("a role")};
      return Proc::recv(peer, {recv_alt(";")});
    }
    if (w == "branch") {
      Role peer{ident("a role")};
      expect("{");
      accept("|");
      std::vector<RecvAlt> alts{recv_alt("=>")};
      while (accept("|")) alts.push_back(recv_alt("=>"));
      expect("}");
      return Proc::recv(peer, std::move(alts));
    }
    if (w == "select") return select();
    if (w == "if") {
      Expr c = expr();
      expect_word("then");
      Proc a = proc();
      expect_word("else");
      return Proc::if_then_else(c, a, proc());
    }
    if (w == "read") {
      std::string fn = ident("an external function name");
      expect("->");
      std::string x = binder();
      expect(":");
      Sort s = sort();
      expect(";");
      return Proc::read(fn, x, s, proc());
    }
    if (w == "write") {
      std::string fn = ident("an external function name");
      expect("(");
      Expr e = expr();
      expect(")");
      expect(";");
      return Proc::write(fn, e, proc());
    }
    if (w == "interact") {
      std::string fn = ident("an external function name");
      expect("(");
      Expr e = expr();
      expect(")");
      expect("->");
      std::string x = binder();
      expect(":");
      Sort s = sort();
      expect(";");
      return Proc::interact(fn, e, x, s, proc());
    }
    --pos_;
    fail("expected a process");
  }

  RecvAlt recv_alt(const char* sep) {
    Label l{ident("a label")};
    expect("(");
    std::string x = binder();
    expect(":");
    Sort s = sort();
    expect(")");
    expect(sep);
    return Proc::alt(l, x, s, proc());
  }

  Proc select() {
    Role peer{ident("a role")};
    expect("{");
    accept("|");
    std::vector<SelectAlt> alts;
    bool seen_default = false;
    while (true) {
      const Token& at = peek();
      std::string kind = ident("'case', 'default' or 'skip'");
      SelectAlt a;
      if (kind == "skip") {
        Label l{ident("a label")};
        expect("(");
        Sort s = sort();
        expect(")");
        expect("=>");
        a = Proc::skip_alt(l, s, local());
      } else if (kind == "case" || kind == "default") {
        if (seen_default)
          throw ParseError{at.line, at.column, kind == "case" ? "case after default" : "more than one default"};
        Expr guard;
        if (kind == "case") {
          guard = expr();
          expect("=>");
        }
        Label l{ident("a label")};
        expect("(");
        Expr e = expr();
        expect(":");
        Sort s = sort();
        expect(")");
        expect(";");
        Proc k = proc();
        if (kind == "case") {
          a = Proc::case_alt(guard, l, e, s, k);
        } else {
          a = Proc::default_alt(l, e, s, k);
          seen_default = true;
        }
      } else {
        throw ParseError{at.line, at.column, "expected 'case', 'default' or 'skip'"};
      }
      alts.push_back(std::move(a));
      if (!accept("|")) break;
    }
    expect("}");
    return Proc::select(peer, std::move(alts));
  }

  ExternSigs externs() {
    ExternSigs out;
    while (is_word("extern")) {
      ++pos_;
      const Token& at = peek();
      std::string fn = ident("an external function name");
      expect(":");
      Sort a = sort();
      expect("->");
      Sort r = sort();
      expect(";");
      if (!out.emplace(fn, ExternSig{a, r}).second)
        throw ParseError{at.line, at.column, "external function " + fn + " declared twice"};
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class T, class F>
Expected<T, Diagnostics> run_parser(const std::string& text, F f) {
  try {
    Parser p(lex(text));
    T out = f(p);
    p.finish();
    return out;
  } catch (const LexError& e) {
    return unexpected(Diagnostics{{Diagnostic::Severity::Error, "", e.line, e.column, e.message, ""}});
  } catch (const ParseError& e) {
    return unexpected(Diagnostics{{Diagnostic::Severity::Error, "", e.line, e.column, e.message, ""}});
  }
}

}  // namespace

Expected<Sort, Diagnostics> parse_sort(const std::string& text) {
  return run_parser<Sort>(text, [](Parser& p) { return p.sort(); });
}

Expected<GlobalType, Diagnostics> parse_global(const std::string& text) {
  return run_parser<GlobalType>(text, [](Parser& p) { return p.global(); });
}

Expected<LocalType, Diagnostics> parse_local(const std::string& text) {
  return run_parser<LocalType>(text, [](Parser& p) { return p.local(); });
}

Expected<Expr, Diagnostics> parse_expr(const std::string& text) {
  return run_parser<Expr>(text, [](Parser& p) { return p.expr(); });
}

Expected<Proc, Diagnostics> parse_proc(const std::string& text) {
  return run_parser<Proc>(text, [](Parser& p) { return p.proc(); });
}

Expected<ProcFile, Diagnostics> parse_proc_file(const std::string& text) {
  return run_parser<ProcFile>(text, [](Parser& p) {
    ProcFile f;
    f.externs = p.externs();
    f.proc = p.proc();
    return f;
  });
}

}  // namespace mpst::frontend
