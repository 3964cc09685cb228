#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mpst/core/types.hpp"
#include "mpst/process/value.hpp"

namespace mpst {

enum class ArithOp : std::uint8_t { Add, Sub, Mul, Div, Mod };
enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };
enum class LogicOp : std::uint8_t { And, Or };

// First-order payload expressions.
class Expr {
 public:
  enum class Kind : std::uint8_t { Lit, Var, Arith, Cmp, Logic, Not, Pair, Sum, Seq, Extern };

  Expr();  // unit literal
  static Expr lit(Value v, Sort s);
  static Expr var(std::string name);
  static Expr arith(ArithOp op, Expr a, Expr b);
  static Expr cmp(CmpOp op, Expr a, Expr b);
  static Expr logic(LogicOp op, Expr a, Expr b);
  static Expr negate(Expr a);
  static Expr pair(Expr a, Expr b);
  // Injection into `sum_sort`; right selects the second summand.
  static Expr sum(bool right, Sort sum_sort, Expr a);
  static Expr seq(Sort elem, std::vector<Expr> items);
  static Expr call(std::string fn, Expr arg);

  Kind kind() const;
  const Value& value() const;
  const Sort& sort() const;  // Lit sort, Sum sort, Seq element sort
  const std::string& name() const;
  ArithOp arith_op() const;
  CmpOp cmp_op() const;
  LogicOp logic_op() const;
  bool right() const;
  const std::vector<Expr>& args() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

class Proc;

struct RecvAlt {
  Label label;
  std::string var;
  Sort sort;
  std::shared_ptr<const Proc> cont_ptr;
  const Proc& cont() const { return *cont_ptr; }
};

struct SelectAlt {
  enum class Kind : std::uint8_t { Case, Default, Skip };
  Kind kind = Kind::Default;
  Expr guard;    // Case only
  Label label;
  Expr payload;  // Case and Default
  Sort sort;
  std::shared_ptr<const Proc> cont_ptr;  // Case and Default
  LocalType skip_type;                   // Skip only
  const Proc& cont() const { return *cont_ptr; }
};

// Endpoint processes. Loop binders are de Bruijn: Jump(0) re-enters the
// innermost enclosing loop.
class Proc {
 public:
  enum class Kind : std::uint8_t { Finish, Jump, Loop, Recv, Send, Select, If, Read, Write, Interact };

  Proc();  // Finish
  static Proc finish();
  static Proc jump(std::size_t index);
  static Proc loop(Proc body, std::string name = {});
  static Proc recv(Role peer, std::vector<RecvAlt> alts);
  static Proc send(Role peer, Label label, Expr e, Sort s, Proc cont);
  static Proc select(Role peer, std::vector<SelectAlt> alts);
  static Proc if_then_else(Expr c, Proc then_p, Proc else_p);
  static Proc read(std::string fn, std::string var, Sort s, Proc cont);
  static Proc write(std::string fn, Expr e, Proc cont);
  static Proc interact(std::string fn, Expr e, std::string var, Sort s, Proc cont);

  static RecvAlt alt(Label l, std::string var, Sort s, Proc cont);
  static SelectAlt case_alt(Expr guard, Label l, Expr e, Sort s, Proc cont);
  static SelectAlt default_alt(Label l, Expr e, Sort s, Proc cont);
  static SelectAlt skip_alt(Label l, Sort s, LocalType t);

  Kind kind() const;
  std::size_t jump_index() const;
  const std::string& loop_name() const;  // surface name, ignored by equality
  const Role& peer() const;
  const Label& label() const;
  const Expr& expr() const;  // Send payload, If condition, Write/Interact argument
  const Sort& sort() const;
  const std::string& var() const;
  const std::string& fn() const;
  const Proc& cont() const;  // Loop body, Send/Read/Write/Interact continuation, If then-branch
  const Proc& else_branch() const;
  const std::vector<RecvAlt>& recv_alts() const;
  const std::vector<SelectAlt>& select_alts() const;

  friend bool operator==(const Proc& a, const Proc& b);

 private:
  struct Node;
  explicit Proc(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

}  // namespace mpst
