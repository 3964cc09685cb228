#include "mpst/process/ast.hpp"

namespace mpst {

// ---------------------------------------------------------------------- Expr

struct Expr::Node {
  Kind kind = Kind::Lit;
  Value value;
  Sort sort;
  std::string name;
  std::uint8_t op = 0;
  bool right = false;
  std::vector<Expr> args;
};

Expr::Expr() : Expr(lit(Value::unit(), Sort::unit())) {}

Expr Expr::lit(Value v, Sort s) {
  auto n = std::make_shared<Node>();
  n->value = std::move(v);
  n->sort = std::move(s);
  return Expr(std::move(n));
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

namespace {
template <class N, class K>
std::shared_ptr<N> binary(K kind, std::uint8_t op, Expr a, Expr b) {
  auto n = std::make_shared<N>();
  n->kind = kind;
  n->op = op;
  n->args = {std::move(a), std::move(b)};
  return n;
}
}  // namespace

Expr Expr::arith(ArithOp op, Expr a, Expr b) {
  return Expr(binary<Node>(Kind::Arith, static_cast<std::uint8_t>(op), std::move(a), std::move(b)));
}

Expr Expr::cmp(CmpOp op, Expr a, Expr b) {
  return Expr(binary<Node>(Kind::Cmp, static_cast<std::uint8_t>(op), std::move(a), std::move(b)));
}

Expr Expr::logic(LogicOp op, Expr a, Expr b) {
  return Expr(binary<Node>(Kind::Logic, static_cast<std::uint8_t>(op), std::move(a), std::move(b)));
}

Expr Expr::negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->args = {std::move(a)};
  return Expr(std::move(n));
}

Expr Expr::pair(Expr a, Expr b) { return Expr(binary<Node>(Kind::Pair, 0, std::move(a), std::move(b))); }

Expr Expr::sum(bool right, Sort sum_sort, Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->right = right;
  n->sort = std::move(sum_sort);
  n->args = {std::move(a)};
  return Expr(std::move(n));
}

Expr Expr::seq(Sort elem, std::vector<Expr> items) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->sort = std::move(elem);
  n->args = std::move(items);
  return Expr(std::move(n));
}

Expr Expr::call(std::string fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Extern;
  n->name = std::move(fn);
  n->args = {std::move(arg)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return n_->kind; }
const Value& Expr::value() const { return n_->value; }
const Sort& Expr::sort() const { return n_->sort; }
const std::string& Expr::name() const { return n_->name; }
ArithOp Expr::arith_op() const { return static_cast<ArithOp>(n_->op); }
CmpOp Expr::cmp_op() const { return static_cast<CmpOp>(n_->op); }
LogicOp Expr::logic_op() const { return static_cast<LogicOp>(n_->op); }
bool Expr::right() const { return n_->right; }
const std::vector<Expr>& Expr::args() const { return n_->args; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.n_ == b.n_) return true;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  return x.kind == y.kind && x.value == y.value && x.sort == y.sort && x.name == y.name && x.op == y.op &&
         x.right == y.right && x.args == y.args;
}

// ---------------------------------------------------------------------- Proc

struct Proc::Node {
  Kind kind = Kind::Finish;
  std::size_t index = 0;
  std::string loop_name;
  Role peer;
  Label label;
  Expr expr;
  Sort sort;
  std::string var;
  std::string fn;
  std::vector<Proc> kids;
  std::vector<RecvAlt> recv_alts;
  std::vector<SelectAlt> select_alts;
};

Proc::Proc() : Proc(finish()) {}

Proc Proc::finish() {
  static const auto node = std::make_shared<const Node>();
  return Proc(node);
}

Proc Proc::jump(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Jump;
  n->index = index;
  return Proc(std::move(n));
}

Proc Proc::loop(Proc body, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Loop;
  n->loop_name = std::move(name);
  n->kids = {std::move(body)};
  return Proc(std::move(n));
}

Proc Proc::recv(Role peer, std::vector<RecvAlt> alts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Recv;
  n->peer = std::move(peer);
  n->recv_alts = std::move(alts);
  return Proc(std::move(n));
}

Proc Proc::send(Role peer, Label label, Expr e, Sort s, Proc cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Send;
  n->peer = std::move(peer);
  n->label = std::move(label);
  n->expr = std::move(e);
  n->sort = std::move(s);
  n->kids = {std::move(cont)};
  return Proc(std::move(n));
}

Proc Proc::select(Role peer, std::vector<SelectAlt> alts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Select;
  n->peer = std::move(peer);
  n->select_alts = std::move(alts);
  return Proc(std::move(n));
}

Proc Proc::if_then_else(Expr c, Proc then_p, Proc else_p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::If;
  n->expr = std::move(c);
  n->kids = {std::move(then_p), std::move(else_p)};
  return Proc(std::move(n));
}

Proc Proc::read(std::string fn, std::string var, Sort s, Proc cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Read;
  n->fn = std::move(fn);
  n->var = std::move(var);
  n->sort = std::move(s);
  n->kids = {std::move(cont)};
  return Proc(std::move(n));
}

Proc Proc::write(std::string fn, Expr e, Proc cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Write;
  n->fn = std::move(fn);
  n->expr = std::move(e);
  n->kids = {std::move(cont)};
  return Proc(std::move(n));
}

Proc Proc::interact(std::string fn, Expr e, std::string var, Sort s, Proc cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Interact;
  n->fn = std::move(fn);
  n->expr = std::move(e);
  n->var = std::move(var);
  n->sort = std::move(s);
  n->kids = {std::move(cont)};
  return Proc(std::move(n));
}

RecvAlt Proc::alt(Label l, std::string var, Sort s, Proc cont) {
  return RecvAlt{std::move(l), std::move(var), std::move(s), std::make_shared<const Proc>(std::move(cont))};
}

SelectAlt Proc::case_alt(Expr guard, Label l, Expr e, Sort s, Proc cont) {
  SelectAlt a;
  a.kind = SelectAlt::Kind::Case;
  a.guard = std::move(guard);
  a.label = std::move(l);
  a.payload = std::move(e);
  a.sort = std::move(s);
  a.cont_ptr = std::make_shared<const Proc>(std::move(cont));
  return a;
}

SelectAlt Proc::default_alt(Label l, Expr e, Sort s, Proc cont) {
  SelectAlt a;
  a.kind = SelectAlt::Kind::Default;
  a.label = std::move(l);
  a.payload = std::move(e);
  a.sort = std::move(s);
  a.cont_ptr = std::make_shared<const Proc>(std::move(cont));
  return a;
}

SelectAlt Proc::skip_alt(Label l, Sort s, LocalType t) {
  SelectAlt a;
  a.kind = SelectAlt::Kind::Skip;
  a.label = std::move(l);
  a.sort = std::move(s);
  a.skip_type = std::move(t);
  return a;
}

Proc::Kind Proc::kind() const { return n_->kind; }
std::size_t Proc::jump_index() const { return n_->index; }
const std::string& Proc::loop_name() const { return n_->loop_name; }
const Role& Proc::peer() const { return n_->peer; }
const Label& Proc::label() const { return n_->label; }
const Expr& Proc::expr() const { return n_->expr; }
const Sort& Proc::sort() const { return n_->sort; }
const std::string& Proc::var() const { return n_->var; }
const std::string& Proc::fn() const { return n_->fn; }
const Proc& Proc::cont() const { return n_->kids.at(0); }
const Proc& Proc::else_branch() const { return n_->kids.at(1); }
const std::vector<RecvAlt>& Proc::recv_alts() const { return n_->recv_alts; }
const std::vector<SelectAlt>& Proc::select_alts() const { return n_->select_alts; }

namespace {
bool same_alt(const RecvAlt& a, const RecvAlt& b) {
  return a.label == b.label && a.var == b.var && a.sort == b.sort && a.cont() == b.cont();
}

bool same_alt(const SelectAlt& a, const SelectAlt& b) {
  if (a.kind != b.kind || a.label != b.label || a.sort != b.sort) return false;
  switch (a.kind) {
    case SelectAlt::Kind::Case:
      return a.guard == b.guard && a.payload == b.payload && a.cont() == b.cont();
    case SelectAlt::Kind::Default: return a.payload == b.payload && a.cont() == b.cont();
    case SelectAlt::Kind::Skip: return a.skip_type == b.skip_type;
  }
  return false;
}

template <class A>
bool same_alts(const std::vector<A>& a, const std::vector<A>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_alt(a[i], b[i])) return false;
  return true;
}
}  // namespace

bool operator==(const Proc& a, const Proc& b) {
  if (a.n_ == b.n_) return true;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  return x.kind == y.kind && x.index == y.index && x.peer == y.peer && x.label == y.label && x.expr == y.expr &&
         x.sort == y.sort && x.var == y.var && x.fn == y.fn && x.kids == y.kids &&
         same_alts(x.recv_alts, y.recv_alts) && same_alts(x.select_alts, y.select_alts);
}

}  // namespace mpst
