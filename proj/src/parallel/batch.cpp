#include "mpst/parallel/batch.hpp"

#include <omp.h>

#include <optional>

namespace mpst::parallel {

int max_threads() { return omp_get_max_threads(); }

namespace {

// f(i) must not throw; every result slot is written exactly once.
template <class R, class F>
std::vector<R> map_parallel(std::size_t n, F f) {
  std::vector<std::optional<R>> slots(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) slots[i].emplace(f(i));
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class R, class F>
std::vector<R> map_serial(std::size_t n, F f) {
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace

Expected<Traces, SemanticsError> traces_global_parallel(const GlobalConfig& c, std::size_t depth, std::size_t fuel) {
  Traces out;
  out.prefixes.insert(Trace{});
  if (is_terminated(c, fuel)) out.completed.insert(Trace{});
  if (depth == 0) return out;
  auto steps = global_enabled(c, fuel);
  if (!steps) return unexpected(steps.error());

  auto subs = map_parallel<Expected<Traces, SemanticsError>>(
      steps->size(), [&](std::size_t i) { return traces_global((*steps)[i].next, depth - 1, fuel); });

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]) return unexpected(subs[i].error());
    const Action& a = (*steps)[i].action;
    auto prepend = [&](const TraceSet& from, TraceSet& into) {
      for (const auto& t : from) {
        Trace u;
        u.reserve(t.size() + 1);
        u.push_back(a);
        u.insert(u.end(), t.begin(), t.end());
        into.insert(std::move(u));
      }
    };
    prepend(subs[i]->prefixes, out.prefixes);
    prepend(subs[i]->completed, out.completed);
  }
  return out;
}

std::vector<EquivResult> equiv_batch(const std::vector<GlobalType>& gs, std::size_t depth, std::size_t fuel) {
  return map_parallel<EquivResult>(gs.size(), [&](std::size_t i) { return check_trace_equiv(gs[i], depth, fuel); });
}

std::vector<EquivResult> equiv_batch_serial(const std::vector<GlobalType>& gs, std::size_t depth, std::size_t fuel) {
  return map_serial<EquivResult>(gs.size(), [&](std::size_t i) { return check_trace_equiv(gs[i], depth, fuel); });
}

namespace {
SoundCompleteResult both(const GlobalType& g, std::size_t depth, const TheoremOptions& opts) {
  return {check_step_soundness(g, depth, opts), check_step_completeness(g, depth, opts)};
}
}  // namespace

std::vector<SoundCompleteResult> theorem_batch(const std::vector<GlobalType>& gs, std::size_t depth,
                                               TheoremOptions opts) {
  return map_parallel<SoundCompleteResult>(gs.size(), [&](std::size_t i) { return both(gs[i], depth, opts); });
}

std::vector<SoundCompleteResult> theorem_batch_serial(const std::vector<GlobalType>& gs, std::size_t depth,
                                                      TheoremOptions opts) {
  return map_serial<SoundCompleteResult>(gs.size(), [&](std::size_t i) { return both(gs[i], depth, opts); });
}

}  // namespace mpst::parallel
