#include <algorithm>
#include <functional>

#include "corpus.hpp"
#include "doctest.h"
#include "mpst/projection/projection.hpp"
#include "mpst/semantics/lts.hpp"
#include "random_gen.hpp"

using namespace mpst;
using namespace mpst::testing;

namespace {

// Independent projection over named binders. Local types are kept as
// canonical strings: binders renamed by depth, branches sorted by label.
struct NLocal {
  enum class Kind { End, Var, Rec, Send, Recv } kind = Kind::End;
  std::string name;
  Role peer;
  std::vector<std::tuple<Label, Sort, NLocal>> branches;
  std::vector<NLocal> body;
};

struct Oracle {
  Role r;
  int next = 0;
  std::optional<std::string> error;

  NLocal project(const GlobalType& g, std::vector<std::string> ctx) {
    NLocal out;
    switch (g.kind()) {
      case GlobalType::Kind::End:
        return out;
      case GlobalType::Kind::Var:
        out.kind = NLocal::Kind::Var;
        out.name = ctx.at(g.var_index());
        return out;
      case GlobalType::Kind::Rec: {
        std::string x = "v" + std::to_string(next++);
        ctx.insert(ctx.begin(), x);
        NLocal b = project(g.body(), ctx);
        if (b.kind == NLocal::Kind::Var) {
          if (b.name == x) return out;  // unguarded: End
          return b;                     // vacuous binder
        }
        out.kind = NLocal::Kind::Rec;
        out.name = x;
        out.body.push_back(b);
        return out;
      }
      case GlobalType::Kind::Msg:
        break;
    }
    std::vector<NLocal> conts;
    for (const auto& b : g.branches()) conts.push_back(project(b.cont, ctx));
    if (g.from() == r || g.to() == r) {
      out.kind = g.from() == r ? NLocal::Kind::Send : NLocal::Kind::Recv;
      out.peer = g.from() == r ? g.to() : g.from();
      for (std::size_t i = 0; i < conts.size(); ++i)
        out.branches.emplace_back(g.branches()[i].label, g.branches()[i].sort, conts[i]);
      return out;
    }
    for (const auto& c : conts)
      if (canon(c, {}) != canon(conts[0], {})) error = "merge";
    return conts[0];
  }

  static std::string canon(const NLocal& l, std::vector<std::string> ctx) {
    switch (l.kind) {
      case NLocal::Kind::End:
        return "end";
      case NLocal::Kind::Var: {
        auto it = std::find(ctx.begin(), ctx.end(), l.name);
        if (it == ctx.end()) return "free:" + l.name;
        return "#" + std::to_string(it - ctx.begin());
      }
      case NLocal::Kind::Rec:
        ctx.insert(ctx.begin(), l.name);
        return "rec(" + canon(l.body[0], ctx) + ")";
      default: {
        std::vector<std::string> bs;
        for (const auto& [lab, s, k] : l.branches) bs.push_back(lab.name + ":" + s.to_string() + "." + canon(k, ctx));
        std::sort(bs.begin(), bs.end());
        std::string out = (l.kind == NLocal::Kind::Send ? "!" : "?") + l.peer.name + "{";
        for (const auto& b : bs) out += b + ";";
        return out + "}";
      }
    }
  }
};

std::string canon_db(const LocalType& l) {
  switch (l.kind()) {
    case LocalType::Kind::End:
      return "end";
    case LocalType::Kind::Var:
      return "#" + std::to_string(l.var_index());
    case LocalType::Kind::Rec:
      return "rec(" + canon_db(l.body()) + ")";
    default: {
      std::vector<std::string> bs;
      for (const auto& b : l.branches()) bs.push_back(b.label.name + ":" + b.sort.to_string() + "." + canon_db(b.cont));
      std::sort(bs.begin(), bs.end());
      std::string out = (l.kind() == LocalType::Kind::Send ? "!" : "?") + l.peer().name + "{";
      for (const auto& b : bs) out += b + ";";
      return out + "}";
    }
  }
}

GlobalConfig step(const GlobalConfig& c, const std::string& action_text) {
  auto steps = global_enabled(c);
  REQUIRE(steps.has_value());
  for (const auto& s : *steps)
    if (to_string(s.action) == action_text) return s.next;
  FAIL("action not enabled: " << action_text);
  return c;
}

}  // namespace

TEST_CASE("golden projections") {
  CHECK(*project(corpus_global("ring.gt"), Role{"Alice"}) == local_of("Bob ! { l(nat) . Carol ? { l(nat) . end } }"));
  LocalType alice_lt = local_of("rec X . Bob ! { l1(unit) . end, l2(nat) . Bob ? { l3(nat) . continue X } }");
  CHECK(*project(corpus_global("ping_pong.gt"), Role{"Alice"}) == alice_lt);
  CHECK(*project(corpus_global("two_buyer.gt"), Role{"B"}) ==
        local_of("S ? { Quote(nat) . A ? { Propose(nat) . S ! { Accept(nat) . S ? { Date(nat) . end }, "
                 "Reject(unit) . end } } }"));
  CHECK(*project(corpus_global("pipeline.gt"), Role{"Bob"}) ==
        local_of("rec X . Alice ? { l(nat) . Carol ! { l(nat) . continue X } }"));
  CHECK(*project(GlobalType::end(), Role{"Alice"}) == LocalType::end());
}

TEST_CASE("merge conflict and its bool variant") {
  auto e = project(corpus_global("gprime.gt"), Role{"Carol"});
  REQUIRE_FALSE(e.has_value());
  CHECK(e.error().kind == ProjectionError::Kind::MergeConflict);
  CHECK(e.error().rule == "proj-cont");
  CHECK(e.error().detail.has_value());
  CHECK(*project(corpus_global("gbool.gt"), Role{"Carol"}) == local_of("Bob ? { l(nat) . end }"));

  auto all = project_all(corpus_global("gprime.gt"));
  REQUIRE_FALSE(all.has_value());
  CHECK(all.error().role == Role{"Carol"});
}

TEST_CASE("project_all covers every participant") {
  auto env = project_all(corpus_global("pipeline.gt"));
  REQUIRE(env.has_value());
  CHECK(env->size() == 3);
  CHECK(project_all(GlobalType::end())->empty());
}

TEST_CASE("unguarded recursion collapses to End unless strict") {
  GlobalType g = global_of("A -> C { k(nat) . rec X . A -> B { l(nat) . continue X } }");
  CHECK(*project(g, Role{"C"}) == local_of("A ? { k(nat) . end }"));
  auto strict = project(g, Role{"C"}, ProjectOptions{false});
  REQUIRE_FALSE(strict.has_value());
  CHECK(strict.error().kind == ProjectionError::Kind::UnguardedProjection);
  // Bystander of an inner loop that jumps to the outer one.
  GlobalType nested = global_of("rec X . A -> C { l(nat) . rec Y . A -> B { m(nat) . continue X } }");
  CHECK(*project(nested, Role{"C"}) == local_of("rec X . A ? { l(nat) . continue X }"));
}

TEST_CASE("project agrees with a named-binder oracle") {
  Rng rng(42);
  std::size_t defined = 0, conflicts = 0;
  for (int i = 0; i < 600; ++i) {
    GlobalType g = random_global(rng, GlobalGen{3, 2, 4});
    for (const Role& r : participants(g)) {
      Oracle o{r, 0, std::nullopt};
      NLocal n = o.project(g, {});
      auto l = project(g, r);
      CHECK(l.has_value() == !o.error.has_value());
      if (l && !o.error) {
        CHECK(canon_db(*l) == Oracle::canon(n, {}));
        ++defined;
      } else {
        ++conflicts;
      }
    }
  }
  CHECK(defined > 500);
  CHECK(conflicts > 0);
}

TEST_CASE("configuration projection matches tree expansion") {
  for (const auto& name : corpus_protocols()) {
    GlobalType g = corpus_global(name);
    for (const Role& r : participants(g)) {
      LocalTree expect = local_tree_expand(*project(g, r), 8);
      CHECK(*config_project(initial_config(g), r, 8) == expect);
      GlobalType u = g;
      for (int k = 0; k < 3 && u.kind() == GlobalType::Kind::Rec; ++k) {
        u = *unfold1(u);
        CHECK(*config_project(initial_config(u), r, 8) == expect);
      }
    }
  }
  CHECK(config_project(initial_config(corpus_global("pipeline.gt")), Role{"Dave"}, 8)->kind() ==
        LocalTree::Kind::End);
  CHECK(config_project(initial_config(GlobalType::end()), Role{"Alice"}, 8)->kind() == LocalTree::Kind::End);
}

TEST_CASE("configuration projection on random types") {
  auto gs = random_projectable_batch(7, 150);
  for (const auto& g : gs) {
    auto env = project_all(g);
    REQUIRE(env.has_value());
    for (const auto& [r, l] : *env) CHECK(*config_project(initial_config(g), r, 6) == local_tree_expand(l, 6));
  }
}

TEST_CASE("one-shot projection of a sent message") {
  GlobalType g = global_of("p -> q { l(nat) . rec X . q -> p { l(nat) . continue X } }");
  GlobalConfig c = step(initial_config(g), "!p,q(l,nat)");
  auto os = one_shot_project(c, 4);
  REQUIRE(os.has_value());
  CHECK(os->env.at(Role{"p"}) == local_tree_expand(local_of("rec X . q ? { l(nat) . continue X }"), 4));
  CHECK(os->env.at(Role{"q"}) ==
        local_tree_expand(local_of("p ? { l(nat) . rec X . p ! { l(nat) . continue X } }"), 4));
  CHECK(os->queues.at(Role{"p"}, Role{"q"}) == std::vector<QueueEntry>{{Label{"l"}, Sort::nat()}});
  CHECK(os->queues.at(Role{"q"}, Role{"p"}).empty());

  auto ping = one_shot_project(initial_config(corpus_global("ping_pong.gt")), 6);
  CHECK(ping->env.at(Role{"Alice"}) ==
        local_tree_expand(local_of("rec X . Bob ! { l1(unit) . end, l2(nat) . Bob ? { l3(nat) . continue X } }"), 6));
  CHECK(ping->queues.empty());
  CHECK(one_shot_project(initial_config(GlobalType::end()), 4)->env.empty());
}

TEST_CASE("queue projection keeps send order") {
  CHECK(queue_project(initial_config(corpus_global("pipeline.gt")))->empty());
  GlobalType g = global_of("A -> B { l(nat) . A -> B { m(bool) . end } }");
  GlobalConfig c = step(step(initial_config(g), "!A,B(l,nat)"), "!A,B(m,bool)");
  auto q = queue_project(c);
  REQUIRE(q.has_value());
  std::vector<QueueEntry> want{{Label{"l"}, Sort::nat()}, {Label{"m"}, Sort::boolean()}};
  CHECK(q->at(Role{"A"}, Role{"B"}) == want);
  // Same bookkeeping as enq.
  QueueEnv manual = enq(enq(QueueEnv{}, Role{"A"}, Role{"B"}, want[0]), Role{"A"}, Role{"B"}, want[1]);
  CHECK(*q == manual);
  GlobalConfig c2 = step(c, "?B,A(l,nat)");
  CHECK(queue_project(c2)->at(Role{"A"}, Role{"B"}) == std::vector<QueueEntry>{want[1]});
}

TEST_CASE("merge ignores branch order") {
  GlobalType g = global_of(
      "A -> B { x(nat) . B -> C { p(nat) . end, q(unit) . end }, y(nat) . B -> C { q(unit) . end, p(nat) . end } }");
  CHECK(project(g, Role{"C"}).has_value());
  CHECK(equal_up_to_branch_order(local_of("A ! { a(nat) . end, b(nat) . end }"),
                                 local_of("A ! { b(nat) . end, a(nat) . end }")));
  CHECK_FALSE(equal_up_to_branch_order(local_of("A ! { a(nat) . end }"), local_of("A ? { a(nat) . end }")));
}
