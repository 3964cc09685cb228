#include "systems.hpp"

#include "corpus.hpp"
#include "mpst/runtime/host.hpp"

namespace mpst::testing {

namespace {

runtime::Endpoint endpoint(const GlobalType& g, const char* role, const char* file) {
  auto pf = corpus_proc(file);
  return runtime::Endpoint{Role{role}, pf.proc, pf.externs, label_table(g)};
}

}  // namespace

std::vector<CorpusSystem> corpus_systems() {
  std::vector<CorpusSystem> out;
  GlobalType pipe = corpus_global("pipeline.gt");
  out.push_back({"pipeline", pipe,
                 {endpoint(pipe, "Alice", "pipeline_alice.zp"), endpoint(pipe, "Bob", "pipeline_bob.zp"),
                  endpoint(pipe, "Carol", "pipeline_carol.zp")},
                 30});
  GlobalType pp = corpus_global("ping_pong.gt");
  out.push_back({"ping_pong", pp, {endpoint(pp, "Alice", "alice4.zp"), endpoint(pp, "Bob", "ping_pong_bob.zp")}, 0});
  GlobalType tb = corpus_global("two_buyer.gt");
  out.push_back({"two_buyer", tb,
                 {endpoint(tb, "A", "buyer_a.zp"), endpoint(tb, "B", "buyer_b.zp"), endpoint(tb, "S", "seller.zp")},
                 0});
  GlobalType ring = corpus_global("ring.gt");
  out.push_back({"ring", ring,
                 {endpoint(ring, "Alice", "ring_alice.zp"), endpoint(ring, "Bob", "ring_bob.zp"),
                  endpoint(ring, "Carol", "ring_carol.zp")},
                 0});
  return out;
}

bool global_admissible(const GlobalType& g, const Trace& t, bool completed) {
  std::vector<GlobalConfig> cur{initial_config(g)};
  for (const auto& a : t) {
    std::vector<GlobalConfig> next;
    for (const auto& c : cur) {
      auto steps = global_enabled(c);
      if (!steps) return false;
      for (const auto& s : *steps)
        if (s.action == a) next.push_back(s.next);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    cur = std::move(next);
  }
  if (!completed) return true;
  for (const auto& c : cur)
    if (is_terminated(c)) return true;
  return false;
}

std::optional<std::size_t> local_rejects(const GlobalType& g, const Role& r, const Trace& t) {
  auto l = project(g, r);
  if (!l) return 0;
  LocalType cur = *l;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto n = local_type_step(cur, r, t[i]);
    if (!n) return i;
    cur = *n;
  }
  return std::nullopt;
}

std::optional<std::string> run_and_check(const CorpusSystem& s, bool tcp) {
  runtime::SystemOptions opts;
  opts.tcp = tcp;
  opts.run.max_actions = s.max_actions;
  auto res = runtime::run_system(s.endpoints, runtime::builtin_registry(), opts);
  if (!res) return s.name + ": " + runtime::to_string(res.error().kind) + ": " + res.error().message;
  Trace merged = erase(res->merged);
  bool finite = s.max_actions == 0;
  if (finite && res->truncated) return s.name + ": truncated";
  if (!global_admissible(s.protocol, merged, finite))
    return s.name + ": merged trace not admissible: " + to_string(merged);
  for (const auto& [r, log] : res->logs) {
    Trace t = erase(log.actions);
    if (auto i = local_rejects(s.protocol, r, t))
      return s.name + ": " + r.name + " log rejected at action " + std::to_string(*i);
  }
  return std::nullopt;
}

}  // namespace mpst::testing
