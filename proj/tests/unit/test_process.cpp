#include "corpus.hpp"
#include "doctest.h"
#include "mpst/process/conformance.hpp"
#include "mpst/process/eval.hpp"
#include "random_gen.hpp"

using namespace mpst;
using namespace mpst::testing;

namespace {

const char* kAliceLt = "rec X . Bob ! { l1(unit) . end, l2(nat) . Bob ? { l3(nat) . continue X } }";
const char* kProjT1Alice =
    "Bob ! { l1(unit) . end, l2(nat) . rec X . Bob ? { l3(nat) . Bob ! { l1(unit) . end, l2(nat) . continue X } } }";

Expected<Value, std::string> eval_text(const std::string& text, std::map<std::string, Value> env = {}) {
  auto e = frontend::parse_expr(text);
  REQUIRE(e.has_value());
  return evaluate(
      *e,
      [&](const std::string& n) -> std::optional<Value> {
        auto it = env.find(n);
        if (it == env.end()) return std::nullopt;
        return it->second;
      },
      [](const std::string& fn, const Value& v) -> Expected<Value, std::string> {
        if (fn == "twice") return Value::nat(v.as_nat() * 2);
        return unexpected(std::string("no ") + fn);
      });
}

Expected<LocalType, TypeError> type_of(const Proc& p, ExternSigs ex = {}) { return typecheck_proc(TypingCtx{{}, ex}, p); }

ValueAction vact(Dir d, const char* s, const char* o, const char* l, Value v, Sort srt) {
  return ValueAction{d, Role{s}, Role{o}, Label{l}, v, srt};
}

ConformanceOptions opts() {
  ConformanceOptions o;
  o.depth = 4;
  return o;
}

}  // namespace

TEST_CASE("expression evaluation") {
  CHECK(*eval_text("1 + 2 * 3") == Value::nat(7));
  CHECK(*eval_text("2 - 5") == Value::nat(0));  // truncated
  CHECK(*eval_text("2i - 5i") == Value::integer(-3));
  CHECK(*eval_text("x / 3", {{"x", Value::nat(30)}}) == Value::nat(10));
  CHECK(*eval_text("x >= 1 && !false", {{"x", Value::nat(1)}}) == Value::boolean(true));
  CHECK(*eval_text("@twice(4)") == Value::nat(8));
  CHECK(*eval_text("(1, true)") == Value::pair(Value::nat(1), Value::boolean(true)));
  CHECK(*eval_text("inr[sum(nat,bool)](false)") == Value::inr(Value::boolean(false)));
  CHECK_FALSE(eval_text("1 / 0").has_value());
  CHECK_FALSE(eval_text("9223372036854775807 + 1").has_value());
  CHECK_FALSE(eval_text("y").has_value());
}

TEST_CASE("expression typing") {
  TypingCtx ctx{{{"x", Sort::nat()}}, {}};
  auto t = [&](const std::string& s) { return typecheck_expr(ctx, *frontend::parse_expr(s)); };
  CHECK(*t("0") == Sort::nat());
  CHECK(*t("x >= 1") == Sort::boolean());
  CHECK(*t("x + 1") == Sort::nat());
  CHECK(t("x + true").error().kind == TypeError::Kind::SortMismatch);
  CHECK(t("z").error().kind == TypeError::Kind::UnboundVariable);
  CHECK(t("@f(x)").error().kind == TypeError::Kind::UnknownExtern);
}

TEST_CASE("golden process types") {
  CHECK(*type_of(corpus_proc("ring_alice.zp").proc) == local_of("Bob ! { l(nat) . Carol ? { l(nat) . end } }"));
  CHECK(*type_of(corpus_proc("alice4.zp").proc) == local_of(kProjT1Alice));
  CHECK(*type_of(corpus_proc("alice3.zp").proc) == *unfold1(local_of(kAliceLt)));
  CHECK(*type_of(corpus_proc("buyer_b.zp").proc) ==
        local_of("S ? { Quote(nat) . A ? { Propose(nat) . S ! { Accept(nat) . S ? { Date(nat) . end }, "
                 "Reject(unit) . end } } }"));
  CHECK(*type_of(Proc::finish()) == LocalType::end());
}

TEST_CASE("typing errors") {
  auto err = [](const std::string& text) { return type_of(proc_of(text)).error().kind; };
  CHECK(err("if true then send A l(1 : nat); finish else finish") == TypeError::Kind::BranchTypeMismatch);
  CHECK(err("branch A { | l(x : nat) => finish | l(y : nat) => finish }") == TypeError::Kind::DuplicateLabel);
  CHECK(err("select A { | case true => l(1 : nat); finish }") == TypeError::Kind::MissingDefault);
  CHECK(err("send A l(true : nat); finish") == TypeError::Kind::SortMismatch);
  CHECK(err("read f -> x : nat; finish") == TypeError::Kind::UnknownExtern);
  ExternSigs ex{{"f", ExternSig{Sort::unit(), Sort::boolean()}}};
  CHECK(type_of(proc_of("read f -> x : nat; finish"), ex).error().kind == TypeError::Kind::ExternSignatureMismatch);
  CHECK(type_of(Proc::jump(0)).error().kind == TypeError::Kind::JumpOutOfScope);
  // Defaults in the wrong place are rejected by the typer for built ASTs too.
  Proc two_defaults = Proc::select(Role{"A"}, {Proc::default_alt(Label{"a"}, Expr(), Sort::unit(), Proc::finish()),
                                               Proc::default_alt(Label{"b"}, Expr(), Sort::unit(), Proc::finish())});
  CHECK(type_of(two_defaults).error().kind == TypeError::Kind::MultipleDefaults);
  Proc early = Proc::select(Role{"A"}, {Proc::default_alt(Label{"a"}, Expr(), Sort::unit(), Proc::finish()),
                                        Proc::case_alt(Expr::lit(Value::boolean(true), Sort::boolean()), Label{"b"},
                                                       Expr(), Sort::unit(), Proc::finish())});
  CHECK(type_of(early).error().kind == TypeError::Kind::DefaultBeforeCase);
}

TEST_CASE("bounded equality up to unravelling") {
  CHECK(ltype_equiv_bounded(local_of(kAliceLt), local_of(kProjT1Alice), 8));
  CHECK(ltype_equiv_bounded(LocalType::end(), LocalType::end(), 5));
  CHECK_FALSE(ltype_equiv_bounded(local_of(kAliceLt), *project(corpus_global("pipeline.gt"), Role{"Bob"}), 2));
  // alice4 is not syntactically the projection.
  CHECK_FALSE(local_of(kAliceLt) == local_of(kProjT1Alice));
}

TEST_CASE("process steps") {
  StubRegistry none;
  Proc s = Proc::send(Role{"q"}, Label{"l"}, Expr::lit(Value::nat(0), Sort::nat()), Sort::nat(), Proc::finish());
  auto k = proc_step(s, vact(Dir::Send, "p", "q", "l", Value::nat(0), Sort::nat()), none);
  REQUIRE(k.has_value());
  CHECK(*k == Proc::finish());
  CHECK(proc_step(s, vact(Dir::Send, "p", "q", "l", Value::nat(1), Sort::nat()), none).error().kind ==
        ProcError::Kind::NotEnabled);

  Proc q = corpus_proc("proc_q.zp").proc;
  auto after = proc_step(q, vact(Dir::Recv, "q", "p", "l1", Value::nat(5), Sort::nat()), none);
  REQUIRE(after.has_value());
  auto head = proc_normalize(*after, none);
  REQUIRE(head.has_value());
  CHECK(head->kind == ProcHead::Kind::Send);
  CHECK(head->label == Label{"l1"});
  CHECK(head->value == Value::nat(6));
  CHECK(proc_step(q, vact(Dir::Recv, "q", "p", "l9", Value::nat(5), Sort::nat()), none).error().kind ==
        ProcError::Kind::LabelNotOffered);
}

TEST_CASE("erasure") {
  CHECK(erase(vact(Dir::Send, "p", "q", "l", Value::nat(7), Sort::nat())) ==
        Action{Dir::Send, Role{"p"}, Role{"q"}, Label{"l"}, Sort::nat()});
  CHECK(erase(vact(Dir::Recv, "q", "p", "l", Value::boolean(true), Sort::boolean())).sort == Sort::boolean());
}

TEST_CASE("process traces") {
  StubRegistry none;
  auto fin = proc_traces(Proc::finish(), Role{"p"}, 3, none);
  CHECK(fin->completed == std::set<ValueTrace>{{}});

  ValueUniverse u01;
  u01.nats = {0, 1};
  auto ring = proc_traces(corpus_proc("ring_alice.zp").proc, Role{"Alice"}, 4, none, u01);
  REQUIRE(ring.has_value());
  CHECK(ring->completed.size() == 2);
  for (const auto& t : ring->completed) CHECK(t.size() == 2);

  // alice4 quits exactly when the received number reaches 1.
  auto a4 = proc_traces(corpus_proc("alice4.zp").proc, Role{"Alice"}, 6, none);
  REQUIRE(a4.has_value());
  for (const auto& t : a4->prefixes) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (t[i].dir != Dir::Recv) continue;
      const auto& next = t[i + 1];
      CHECK((next.label == Label{t[i].value.as_nat() >= 1 ? "l1" : "l2"}));
    }
  }
}

TEST_CASE("complete subtraces") {
  Action pq{Dir::Send, Role{"p"}, Role{"q"}, Label{"l"}, Sort::nat()};
  Action rq{Dir::Send, Role{"r"}, Role{"q"}, Label{"l"}, Sort::nat()};
  Action pr{Dir::Send, Role{"p"}, Role{"r"}, Label{"l"}, Sort::nat()};
  CHECK(subtrace_check({}, {}, Role{"p"}));
  CHECK(subtrace_check({pq}, {rq, pq}, Role{"p"}));
  CHECK_FALSE(subtrace_check({pq}, {pq, pr}, Role{"p"}));
  CHECK(subtrace_check({pq}, {pq, rq}, Role{"p"}));
}

TEST_CASE("conformance of the ping-pong clients and buyer B") {
  GlobalType pp = corpus_global("ping_pong.gt");
  for (const char* f : {"alice0.zp", "alice1.zp", "alice3.zp", "alice4.zp"}) {
    auto r = check_conformance(corpus_proc(f).proc, pp, Role{"Alice"}, StubRegistry{}, opts());
    CHECK_MESSAGE(r.ok, f << ": " << r.message);
  }
  auto b = check_conformance(corpus_proc("buyer_b.zp").proc, corpus_global("two_buyer.gt"), Role{"B"}, StubRegistry{},
                             opts());
  CHECK_MESSAGE(b.ok, b.message);
  CHECK(b.process_traces > 0);
}

TEST_CASE("conformance reports the failing stage") {
  GlobalType pp = corpus_global("ping_pong.gt");
  Proc corrupt = proc_of(
      "select Bob { | skip l1(unit) => Bob ! { l1(unit) . end } | default l2(0 : nat); "
      "loop X { recv Bob l3(x : nat); select Bob { | case x >= 1 => l1(tt : unit); finish "
      "| default l2(x : nat); jump X } } }");
  auto r = check_conformance(corrupt, pp, Role{"Alice"}, StubRegistry{}, opts());
  CHECK_FALSE(r.ok);
  CHECK(r.failed_stage == 2);

  auto untyped = check_conformance(proc_of("send Bob l2(true : nat); finish"), pp, Role{"Alice"}, {}, opts());
  CHECK(untyped.failed_stage == 1);
}

TEST_CASE("steps preserve types") {
  Rng rng(3);
  StubRegistry stubs = generated_stubs();
  TypingCtx ctx{{}, generated_externs()};
  std::size_t steps = 0;
  for (int i = 0; i < 150; ++i) {
    Proc p = random_proc(rng, ProcGen{});
    auto l = typecheck_proc(ctx, p);
    REQUIRE_MESSAGE(l.has_value(), frontend::pretty_proc(p));
    auto enabled = proc_enabled(p, Role{"R"}, stubs, ValueUniverse{});
    REQUIRE(enabled.has_value());
    for (const auto& s : *enabled) {
      auto want = local_type_step(*l, Role{"R"}, erase(s.action));
      REQUIRE_MESSAGE(want.has_value(), to_string(s.action));
      auto got = typecheck_proc(ctx, s.next);
      REQUIRE(got.has_value());
      CHECK(ltype_equiv_bounded(*got, *want, 8));
      ++steps;
    }
  }
  CHECK(steps > 100);
}
