#include "mpst/projection/projection.hpp"

#include <algorithm>

namespace mpst {

std::string to_string(ProjectionError::Kind k) {
  switch (k) {
    case ProjectionError::Kind::MergeConflict: return "MergeConflict";
    case ProjectionError::Kind::UnguardedProjection: return "UnguardedProjection";
    case ProjectionError::Kind::InternalPartiality: return "InternalPartiality";
    case ProjectionError::Kind::InconsistentQueues: return "InconsistentQueues";
  }
  return "?";
}

namespace {

template <class T>
T sorted_branches(const T& t) {
  if (t.kind() == T::Kind::Rec) return T::rec(sorted_branches(t.body()));
  if (t.kind() != T::Kind::Send && t.kind() != T::Kind::Recv) return t;
  auto bs = t.branches();
  for (auto& b : bs) b.cont = sorted_branches(b.cont);
  std::stable_sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  return T::Kind::Send == t.kind() ? T::send(t.peer(), std::move(bs)) : T::recv(t.peer(), std::move(bs));
}

// Same as above for trees, which have no binders.
LocalTree sorted_tree(const LocalTree& t) {
  if (t.kind() != LocalTree::Kind::Send && t.kind() != LocalTree::Kind::Recv) return t;
  auto bs = t.branches();
  for (auto& b : bs) b.cont = sorted_tree(b.cont);
  std::stable_sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  return t.kind() == LocalTree::Kind::Send ? LocalTree::send(t.peer(), std::move(bs))
                                           : LocalTree::recv(t.peer(), std::move(bs));
}

bool part_of(const GlobalType& g, const Role& r) {
  switch (g.kind()) {
    case GlobalType::Kind::Rec: return part_of(g.body(), r);
    case GlobalType::Kind::Msg:
      if (g.from() == r || g.to() == r) return true;
      for (const auto& b : g.branches())
        if (part_of(b.cont, r)) return true;
      return false;
    default: return false;
  }
}

bool part_of(const GlobalConfig& c, const Role& r) {
  if (c.is_type()) return part_of(c.type(), r);
  if (c.from() == r || c.to() == r) return true;
  for (const auto& b : c.branches())
    if (part_of(b.cont, r)) return true;
  return false;
}

struct Projector {
  const Role& r;
  ProjectOptions opts;
  std::vector<std::string> path;

  ProjectionError error(ProjectionError::Kind k, std::string rule, std::string msg) {
    ProjectionError e;
    e.kind = k;
    e.role = r;
    e.path = path;
    e.rule = std::move(rule);
    e.message = std::move(msg);
    return e;
  }

  Expected<LocalType, ProjectionError> run(const GlobalType& g) {
    switch (g.kind()) {
      case GlobalType::Kind::End: return LocalType::end();
      case GlobalType::Kind::Var: return LocalType::var(g.var_index());
      case GlobalType::Kind::Rec: {
        auto body = run(g.body());
        if (!body) return body;
        const LocalType& l = *body;
        if (l.kind() == LocalType::Kind::Var && l.var_index() > 0) {
          // The binder is vacuous; the body jumps straight to an outer loop.
          return LocalType::var(l.var_index() - 1);
        }
        if (pure_rec(l)) {
          if (!opts.collapse_unguarded)
            return unexpected(error(ProjectionError::Kind::UnguardedProjection, "proj-rec",
                                    "projected recursion body is not guarded"));
          return LocalType::end();
        }
        return LocalType::rec(l);
      }
      case GlobalType::Kind::Msg: break;
    }
    const bool sender = g.from() == r;
    const bool receiver = g.to() == r;
    std::vector<LocalType> conts;
    conts.reserve(g.branches().size());
    for (const auto& b : g.branches()) {
      path.push_back(b.label.name);
      auto l = run(b.cont);
      path.pop_back();
      if (!l) return l;
      conts.push_back(std::move(*l));
    }
    if (sender || receiver) {
      LocalType::Branches bs;
      for (std::size_t i = 0; i < conts.size(); ++i)
        bs.push_back({g.branches()[i].label, g.branches()[i].sort, conts[i]});
      return sender ? LocalType::send(g.to(), std::move(bs)) : LocalType::recv(g.from(), std::move(bs));
    }
    if (conts.empty())
      return unexpected(error(ProjectionError::Kind::InternalPartiality, "proj-cont", "message with no branches"));
    for (std::size_t i = 1; i < conts.size(); ++i) {
      if (!equal_up_to_branch_order(conts[0], conts[i])) {
        auto e = error(ProjectionError::Kind::MergeConflict, "proj-cont",
                       "continuations of " + g.branches()[0].label.name + " and " + g.branches()[i].label.name +
                           " differ for " + r.name);
        e.detail = std::make_pair(conts[0], conts[i]);
        return unexpected(std::move(e));
      }
    }
    return conts[0];
  }
};

struct TreeProjector {
  const Role& r;
  std::size_t fuel;
  std::vector<std::string> path;
  // Marker-free configurations entered since the last node of r, to detect
  // bystander chains that never reach r.
  std::vector<GlobalType> idle;

  ProjectionError error(ProjectionError::Kind k, std::string rule, std::string msg) {
    ProjectionError e;
    e.kind = k;
    e.role = r;
    e.path = path;
    e.rule = std::move(rule);
    e.message = std::move(msg);
    return e;
  }

  Expected<LocalTree::Branches, ProjectionError> all_branches(const GlobalConfig::Branches& bs, std::size_t depth) {
    LocalTree::Branches out;
    auto saved = std::move(idle);
    idle.clear();
    for (const auto& b : bs) {
      path.push_back(b.label.name);
      auto t = run(b.cont, depth);
      path.pop_back();
      if (!t) return unexpected(t.error());
      out.push_back({b.label, b.sort, *t});
    }
    idle = std::move(saved);
    return out;
  }

  Expected<LocalTree, ProjectionError> run(const GlobalConfig& c, std::size_t depth) {
    if (!part_of(c, r)) return LocalTree::end();
    if (c.is_type()) {
      GlobalType g = c.type();
      if (!unfold_head(g, fuel))
        return unexpected(error(ProjectionError::Kind::InternalPartiality, "co-proj", "unfolding fuel exhausted"));
      if (g.kind() != GlobalType::Kind::Msg)
        return unexpected(error(ProjectionError::Kind::InternalPartiality, "co-proj", "free variable in configuration"));
      GlobalConfig::Branches bs;
      for (const auto& b : g.branches()) bs.push_back({b.label, b.sort, GlobalConfig::of(b.cont)});
      if (g.from() != r && g.to() != r) {
        for (const auto& seen : idle)
          if (seen == g)
            return unexpected(error(ProjectionError::Kind::InternalPartiality, "co-proj-cont",
                                    "bystander recursion never reaches " + r.name));
        idle.push_back(g);
        auto t = bystander(g.from(), g.to(), bs, depth);
        idle.pop_back();
        return t;
      }
      return comm(g.from(), g.to(), bs, depth);
    }
    if (c.kind() == GlobalConfig::Kind::MsgSent) {
      if (c.to() == r) {
        if (depth == 0) return LocalTree::cut();
        auto bs = all_branches(c.branches(), depth - 1);
        if (!bs) return unexpected(bs.error());
        return LocalTree::recv(c.from(), std::move(*bs));
      }
      const auto& b = c.branches().at(c.chosen());
      path.push_back(b.label.name);
      auto t = run(b.cont, depth);
      path.pop_back();
      return t;
    }
    if (c.from() != r && c.to() != r) return bystander(c.from(), c.to(), c.branches(), depth);
    return comm(c.from(), c.to(), c.branches(), depth);
  }

  Expected<LocalTree, ProjectionError> comm(const Role& p, const Role& q, const GlobalConfig::Branches& bs,
                                            std::size_t depth) {
    if (depth == 0) return LocalTree::cut();
    auto out = all_branches(bs, depth - 1);
    if (!out) return unexpected(out.error());
    return p == r ? LocalTree::send(q, std::move(*out)) : LocalTree::recv(p, std::move(*out));
  }

  Expected<LocalTree, ProjectionError> bystander(const Role&, const Role&, const GlobalConfig::Branches& bs,
                                                 std::size_t depth) {
    std::vector<LocalTree> conts;
    for (const auto& b : bs) {
      if (!part_of(b.cont, r))
        return unexpected(error(ProjectionError::Kind::MergeConflict, "co-proj-cont",
                                r.name + " does not take part in branch " + b.label.name));
      path.push_back(b.label.name);
      auto t = run(b.cont, depth);
      path.pop_back();
      if (!t) return t;
      conts.push_back(std::move(*t));
    }
    for (std::size_t i = 1; i < conts.size(); ++i) {
      if (!equal_up_to_branch_order(conts[0], conts[i])) {
        auto e = error(ProjectionError::Kind::MergeConflict, "co-proj-cont",
                       "continuations of " + bs[0].label.name + " and " + bs[i].label.name + " differ for " +
                           r.name);
        e.tree_detail = std::make_pair(conts[0], conts[i]);
        return unexpected(std::move(e));
      }
    }
    return conts.at(0);
  }
};

}  // namespace

bool equal_up_to_branch_order(const LocalType& a, const LocalType& b) {
  if (a == b) return true;
  return sorted_branches(a) == sorted_branches(b);
}

bool equal_up_to_branch_order(const LocalTree& a, const LocalTree& b) {
  if (a == b) return true;
  return sorted_tree(a) == sorted_tree(b);
}

Expected<LocalType, ProjectionError> project(const GlobalType& g, const Role& r, ProjectOptions opts) {
  // A role that never occurs projects to End (co-proj-end on the tree side).
  if (!part_of(g, r)) return LocalType::end();
  Projector p{r, opts, {}};
  return p.run(g);
}

Expected<LocalEnv, ProjectionError> project_all(const GlobalType& g, ProjectOptions opts) {
  LocalEnv env;
  for (const auto& r : participants(g)) {
    auto l = project(g, r, opts);
    if (!l) return unexpected(l.error());
    env.emplace(r, std::move(*l));
  }
  return env;
}

Expected<LocalTree, ProjectionError> config_project(const GlobalConfig& c, const Role& r, std::size_t depth,
                                                    std::size_t fuel) {
  TreeProjector p{r, fuel, {}, {}};
  return p.run(c, depth);
}

namespace {
Expected<QueueEnv, ProjectionError> queue_project_at(const GlobalConfig& c, std::vector<std::string>& path) {
  auto fail = [&](std::string msg) {
    ProjectionError e;
    e.kind = ProjectionError::Kind::InconsistentQueues;
    e.path = path;
    e.rule = "q-proj-send";
    e.message = std::move(msg);
    return unexpected(std::move(e));
  };
  if (c.is_type()) return QueueEnv{};
  if (c.kind() == GlobalConfig::Kind::MsgSent) {
    const auto& b = c.branches().at(c.chosen());
    path.push_back(b.label.name);
    auto q = queue_project_at(b.cont, path);
    path.pop_back();
    if (!q) return q;
    q->push_front(c.from(), c.to(), {b.label, b.sort});
    return q;
  }
  std::optional<QueueEnv> first;
  for (const auto& b : c.branches()) {
    path.push_back(b.label.name);
    auto q = queue_project_at(b.cont, path);
    path.pop_back();
    if (!q) return q;
    if (!first) {
      first = std::move(*q);
    } else if (!(*first == *q)) {
      return fail("branches disagree on queue contents");
    }
  }
  if (!first) return QueueEnv{};
  if (!first->at(c.from(), c.to()).empty())
    return fail("queue " + c.from().name + "->" + c.to().name + " is not empty before an unsent message");
  return *first;
}
}  // namespace

Expected<QueueEnv, ProjectionError> queue_project(const GlobalConfig& c) {
  std::vector<std::string> path;
  return queue_project_at(c, path);
}

Expected<OneShot, ProjectionError> one_shot_project(const GlobalConfig& c, const std::set<Role>& roles,
                                                    std::size_t depth, std::size_t fuel) {
  OneShot out;
  for (const auto& r : roles) {
    auto t = config_project(c, r, depth, fuel);
    if (!t) return unexpected(t.error());
    out.env.emplace(r, std::move(*t));
  }
  auto q = queue_project(c);
  if (!q) return unexpected(q.error());
  out.queues = std::move(*q);
  return out;
}

Expected<OneShot, ProjectionError> one_shot_project(const GlobalConfig& c, std::size_t depth, std::size_t fuel) {
  return one_shot_project(c, participants(c), depth, fuel);
}

}  // namespace mpst
