#include <algorithm>
#include <deque>

#include "mpst/semantics/lts.hpp"

namespace mpst {

namespace {

struct GlobalExplorer {
  std::size_t depth;
  std::size_t fuel;
  Traces out;
  std::map<GlobalConfig, std::vector<GlobalStep>> memo;
  std::optional<SemanticsError> error;
  Trace cur;

  const std::vector<GlobalStep>* steps(const GlobalConfig& c) {
    auto it = memo.find(c);
    if (it != memo.end()) return &it->second;
    auto s = global_enabled(c, fuel);
    if (!s) {
      error = s.error();
      return nullptr;
    }
    return &memo.emplace(c, std::move(*s)).first->second;
  }

  void run(const GlobalConfig& c) {
    out.prefixes.insert(cur);
    if (is_terminated(c, fuel)) out.completed.insert(cur);
    if (cur.size() >= depth || error) return;
    const auto* ss = steps(c);
    if (!ss) return;
    for (const auto& s : *ss) {
      cur.push_back(s.action);
      run(s.next);
      cur.pop_back();
      if (error) return;
    }
  }
};

void local_explore(const LocalEnv& e, const QueueEnv& q, std::size_t depth, std::size_t fuel, Trace& cur,
                   Traces& out) {
  out.prefixes.insert(cur);
  if (local_terminated(e, q, fuel)) out.completed.insert(cur);
  if (cur.size() >= depth) return;
  for (const auto& s : local_enabled(e, q, fuel)) {
    cur.push_back(s.action);
    local_explore(s.env, s.queues, depth, fuel, cur, out);
    cur.pop_back();
  }
}

bool shorter_first(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::optional<std::pair<Trace, TraceSide>> first_difference(const TraceSet& g, const TraceSet& l) {
  std::optional<std::pair<Trace, TraceSide>> best;
  auto consider = [&](const Trace& t, TraceSide side) {
    if (!best || shorter_first(t, best->first)) best = std::make_pair(t, side);
  };
  for (const auto& t : g)
    if (!l.count(t)) consider(t, TraceSide::GlobalOnly);
  for (const auto& t : l)
    if (!g.count(t)) consider(t, TraceSide::LocalOnly);
  return best;
}

}  // namespace

Expected<Traces, SemanticsError> traces_global(const GlobalConfig& c, std::size_t depth, std::size_t fuel) {
  GlobalExplorer ex{depth, fuel, {}, {}, std::nullopt, {}};
  ex.run(c);
  if (ex.error) return unexpected(*ex.error);
  return std::move(ex.out);
}

Traces traces_local(const LocalEnv& e, const QueueEnv& q, std::size_t depth, std::size_t fuel) {
  Traces out;
  Trace cur;
  local_explore(e, q, depth, fuel, cur, out);
  return out;
}

Expected<EquivReport, SemanticsError> compare_traces(const Traces& global, const Traces& local, std::size_t depth) {
  EquivReport r;
  r.depth = depth;
  r.global_trace_count = global.prefixes.size();
  r.local_trace_count = local.prefixes.size();
  auto diff = first_difference(global.prefixes, local.prefixes);
  if (!diff) {
    diff = first_difference(global.completed, local.completed);
    r.counterexample_is_completion = diff.has_value();
  }
  if (diff) {
    r.equal = false;
    r.counterexample = diff->first;
    r.side = diff->second;
  }
  return r;
}

Expected<EquivReport, SemanticsError> check_trace_equiv(const GlobalType& g, const LocalEnv& e, std::size_t depth,
                                                        std::size_t fuel) {
  auto gt = traces_global(initial_config(g), depth, fuel);
  if (!gt) return unexpected(gt.error());
  auto lt = traces_local(e, QueueEnv{}, depth, fuel);
  return compare_traces(*gt, lt, depth);
}

Expected<EquivReport, SemanticsError> check_trace_equiv(const GlobalType& g, std::size_t depth, std::size_t fuel) {
  auto env = project_all(g);
  if (!env)
    return unexpected(SemanticsError{SemanticsError::Kind::Projection,
                                     env.error().message.empty() ? "projection failed" : env.error().message});
  return check_trace_equiv(g, *env, depth, fuel);
}

// --- theorems ------------------------------------------------------------------

namespace {

std::optional<std::string> match_projection(const GlobalConfig& next, const std::set<Role>& roles,
                                            const Action& a, const TreeEnv& env, const QueueEnv& queues,
                                            const TheoremOptions& opts) {
  auto proj = one_shot_project(next, roles, opts.tree_depth, opts.fuel);
  if (!proj) return "successor does not project: " + proj.error().message;
  if (!(proj->queues == queues)) return "queue environments differ after " + to_string(a);
  for (const auto& r : roles) {
    const LocalTree& expect = proj->env.at(r);
    const LocalTree& got = env.at(r);
    if (r == a.subj) {
      if (!(tree_truncate(expect, opts.tree_depth - 1) == got))
        return "local tree of " + r.name + " differs after " + to_string(a);
    } else if (!(expect == got)) {
      return "local tree of " + r.name + " changed after " + to_string(a);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> soundness_at(const GlobalConfig& c, const std::set<Role>& roles, const OneShot& proj,
                                        TheoremOptions opts, std::optional<Action>* failing) {
  auto steps = global_enabled(c, opts.fuel);
  if (!steps) return "global step enumeration failed: " + steps.error().message;
  auto local = tree_enabled(proj.env, proj.queues);
  for (const auto& s : *steps) {
    if (failing) *failing = s.action;
    auto it = std::find_if(local.begin(), local.end(), [&](const TreeStep& t) { return t.action == s.action; });
    if (it == local.end()) return "projected environment cannot perform " + to_string(s.action);
    if (auto why = match_projection(s.next, roles, s.action, it->env, it->queues, opts)) return why;
  }
  if (failing) failing->reset();
  return std::nullopt;
}

std::optional<std::string> completeness_at(const GlobalConfig& c, const std::set<Role>& roles,
                                           const OneShot& proj, TheoremOptions opts,
                                           std::optional<Action>* failing) {
  auto steps = global_enabled(c, opts.fuel);
  if (!steps) return "global step enumeration failed: " + steps.error().message;
  for (const auto& t : tree_enabled(proj.env, proj.queues)) {
    if (failing) *failing = t.action;
    std::optional<std::string> why = "configuration cannot perform " + to_string(t.action);
    for (const auto& s : *steps) {
      if (s.action != t.action) continue;
      why = match_projection(s.next, roles, t.action, t.env, t.queues, opts);
      if (!why) break;
    }
    if (why) return why;
  }
  if (failing) failing->reset();
  return std::nullopt;
}

namespace {

template <class Check>
Expected<TheoremReport, SemanticsError> explore_theorem(const GlobalType& g, std::size_t depth,
                                                        TheoremOptions opts, Check check) {
  const auto roles = participants(g);
  TheoremReport report;
  std::map<GlobalConfig, Trace> seen;
  std::vector<GlobalConfig> level{initial_config(g)};
  seen.emplace(level[0], Trace{});
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<GlobalConfig> next;
    for (const auto& c : level) {
      ++report.configs_checked;
      auto proj = one_shot_project(c, roles, opts.tree_depth, opts.fuel);
      if (!proj) {
        report.violation = TheoremViolation{seen.at(c), c, std::nullopt, "configuration does not project: " +
                                                                             proj.error().message};
        return report;
      }
      std::optional<Action> failing;
      if (auto why = check(c, roles, *proj, opts, &failing)) {
        report.violation = TheoremViolation{seen.at(c), c, failing, *why};
        return report;
      }
      auto steps = global_enabled(c, opts.fuel);
      if (!steps) return unexpected(steps.error());
      report.steps_checked += steps->size();
      for (const auto& s : *steps) {
        if (seen.count(s.next)) continue;
        Trace t = seen.at(c);
        t.push_back(s.action);
        seen.emplace(s.next, std::move(t));
        next.push_back(s.next);
      }
    }
    level = std::move(next);
  }
  return report;
}

}  // namespace

Expected<TheoremReport, SemanticsError> check_step_soundness(const GlobalType& g, std::size_t depth,
                                                             TheoremOptions opts) {
  return explore_theorem(g, depth, opts, soundness_at);
}

Expected<TheoremReport, SemanticsError> check_step_completeness(const GlobalType& g, std::size_t depth,
                                                                TheoremOptions opts) {
  return explore_theorem(g, depth, opts, completeness_at);
}

}  // namespace mpst
