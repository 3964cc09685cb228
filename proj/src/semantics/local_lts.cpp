#include <algorithm>

#include "mpst/semantics/lts.hpp"

namespace mpst {

namespace {

template <class Node>
const Branch<Node>* find_branch(const std::vector<Branch<Node>>& bs, const Label& l, const Sort& s) {
  for (const auto& b : bs)
    if (b.label == l && b.sort == s) return &b;
  return nullptr;
}

// Shared by type and tree environments: enumerate the sends of every role
// and the receives whose queue head matches.
template <class Env, class Step, class Head>
std::vector<Step> env_enabled(const Env& e, const QueueEnv& q, Head head) {
  std::vector<Step> out;
  for (const auto& [r, t0] : e) {
    auto t = head(t0);
    if (!t) continue;
    using K = typename std::decay_t<decltype(*t)>::Kind;
    if (t->kind() == K::Send) {
      for (const auto& b : t->branches()) {
        Env e2 = e;
        e2[r] = b.cont;
        out.push_back({Action{Dir::Send, r, t->peer(), b.label, b.sort}, std::move(e2),
                       enq(q, r, t->peer(), {b.label, b.sort})});
      }
    } else if (t->kind() == K::Recv) {
      auto d = deq(q, t->peer(), r);
      if (!d) continue;
      const auto* b = find_branch(t->branches(), d->first.label, d->first.sort);
      if (!b) continue;
      Env e2 = e;
      e2[r] = b->cont;
      out.push_back({Action{Dir::Recv, r, t->peer(), b->label, b->sort}, std::move(e2), std::move(d->second)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Step& a, const Step& b) { return a.action < b.action; });
  return out;
}

}  // namespace

std::vector<LocalStep> local_enabled(const LocalEnv& e, const QueueEnv& q, std::size_t fuel) {
  return env_enabled<LocalEnv, LocalStep>(e, q, [fuel](const LocalType& l) -> std::optional<LocalType> {
    LocalType u = l;
    if (!unfold_head(u, fuel)) return std::nullopt;
    return u;
  });
}

std::vector<TreeStep> tree_enabled(const TreeEnv& e, const QueueEnv& q) {
  return env_enabled<TreeEnv, TreeStep>(e, q, [](const LocalTree& t) { return std::optional<LocalTree>(t); });
}

bool local_terminated(const LocalEnv& e, const QueueEnv& q, std::size_t fuel) {
  if (!q.empty()) return false;
  for (const auto& [r, l] : e) {
    LocalType u = l;
    if (!unfold_head(u, fuel) || u.kind() != LocalType::Kind::End) return false;
  }
  return true;
}

std::optional<LocalType> local_type_step(const LocalType& l, const Role& self, const Action& a, std::size_t fuel) {
  if (a.subj != self) return std::nullopt;
  LocalType u = l;
  if (!unfold_head(u, fuel)) return std::nullopt;
  const bool ok = (a.dir == Dir::Send && u.kind() == LocalType::Kind::Send) ||
                  (a.dir == Dir::Recv && u.kind() == LocalType::Kind::Recv);
  if (!ok || u.peer() != a.other) return std::nullopt;
  const auto* b = find_branch(u.branches(), a.label, a.sort);
  if (!b) return std::nullopt;
  return b->cont;
}

}  // namespace mpst
