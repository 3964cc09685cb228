#include "mpst/process/conformance.hpp"

#include <map>

#include "mpst/semantics/lts.hpp"

namespace mpst {

bool subtrace_check(const Trace& t1, const Trace& t2, const Role& p) {
  std::size_t j = 0;
  for (const auto& a : t2) {
    if (a.subj != p) continue;
    if (j >= t1.size() || !(t1[j] == a)) return false;
    ++j;
  }
  return j == t1.size();
}

namespace {

// Depth-first search for a global prefix whose r-actions spell tp.
class AdmitSearch {
 public:
  AdmitSearch(const Trace& tp, const Role& r, std::size_t fuel) : tp_(tp), r_(r), fuel_(fuel) {}

  Expected<bool, SemanticsError> run(const GlobalConfig& c, std::size_t pos, std::size_t budget) {
    if (pos == tp_.size()) return true;
    if (budget == 0) return false;
    auto key = std::make_pair(c, pos);
    auto it = best_.find(key);
    if (it != best_.end() && it->second >= budget) return false;
    best_[key] = budget;
    auto steps = enabled(c);
    if (!steps) return unexpected(steps.error());
    for (const auto& s : **steps) {
      std::size_t next = pos;
      if (s.action.subj == r_) {
        if (!(s.action == tp_[pos])) continue;
        ++next;
      }
      auto found = run(s.next, next, budget - 1);
      if (!found || *found) return found;
    }
    return false;
  }

 private:
  Expected<const std::vector<GlobalStep>*, SemanticsError> enabled(const GlobalConfig& c) {
    auto it = memo_.find(c);
    if (it != memo_.end()) return &it->second;
    auto s = global_enabled(c, fuel_);
    if (!s) return unexpected(s.error());
    return &memo_.emplace(c, std::move(*s)).first->second;
  }

  const Trace& tp_;
  const Role& r_;
  std::size_t fuel_;
  std::map<std::pair<GlobalConfig, std::size_t>, std::size_t> best_;
  std::map<GlobalConfig, std::vector<GlobalStep>> memo_;
};

}  // namespace

Expected<bool, SemanticsError> global_admits(const GlobalType& g, const Trace& tp, const Role& r,
                                             std::size_t global_depth, std::size_t fuel) {
  for (const auto& a : tp)
    if (a.subj != r) return false;
  AdmitSearch s(tp, r, fuel);
  return s.run(initial_config(g), 0, global_depth);
}

ConformanceReport check_conformance(const Proc& p, const GlobalType& g, const Role& r, const StubRegistry& stubs,
                                    const ConformanceOptions& opts) {
  ConformanceReport rep;
  TypingCtx ctx;
  ctx.externs = stubs.signatures();
  auto l = typecheck_proc(ctx, p);
  if (!l) {
    rep.failed_stage = 1;
    rep.rule = l.error().rule;
    rep.message = to_string(l.error().kind) + ": " + l.error().message;
    return rep;
  }
  rep.synthesized = *l;
  if (opts.stages < 2) {
    rep.ok = true;
    return rep;
  }
  auto proj = project(g, r);
  if (!proj) {
    rep.failed_stage = 2;
    rep.rule = proj.error().rule;
    rep.message = to_string(proj.error().kind) + ": " + proj.error().message;
    return rep;
  }
  rep.projected = *proj;
  const std::size_t type_depth = opts.type_depth ? opts.type_depth : opts.depth;
  if (!ltype_equiv_bounded(*l, *proj, type_depth)) {
    rep.failed_stage = 2;
    rep.message = "process type and projection differ within depth " + std::to_string(type_depth);
    return rep;
  }
  if (opts.stages < 3) {
    rep.ok = true;
    return rep;
  }
  auto traces = proc_traces(p, r, opts.depth, stubs, opts.universe);
  if (!traces) {
    rep.failed_stage = 3;
    rep.message = to_string(traces.error().kind) + ": " + traces.error().message;
    return rep;
  }
  std::set<Trace> erased;
  for (const auto& t : traces->prefixes) erased.insert(erase(t));
  rep.process_traces = erased.size();
  rep.global_depth = opts.depth * std::max<std::size_t>(1, participants(g).size());
  for (const auto& t : erased) {
    auto ok = global_admits(g, t, r, rep.global_depth, opts.fuel);
    if (!ok) {
      rep.failed_stage = 3;
      rep.message = ok.error().message;
      return rep;
    }
    if (!*ok) {
      rep.failed_stage = 3;
      rep.unmatched = t;
      rep.message = "no global trace within depth " + std::to_string(rep.global_depth) + " has " + r.name +
                    "-projection " + to_string(t);
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace mpst
