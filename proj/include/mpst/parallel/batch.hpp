#pragma once

#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/semantics/lts.hpp"

namespace mpst::parallel {

// Number of OpenMP threads a parallel region would use.
int max_threads();

// Global traces with the first-level successors explored concurrently.
// Equal to traces_global for every input.
Expected<Traces, SemanticsError> traces_global_parallel(const GlobalConfig& c, std::size_t depth,
                                                        std::size_t fuel = kDefaultFuel);

using EquivResult = Expected<EquivReport, SemanticsError>;
using TheoremResult = Expected<TheoremReport, SemanticsError>;

// One bounded trace-equivalence check per type. The serial versions are the
// reference the parallel ones are tested against.
std::vector<EquivResult> equiv_batch(const std::vector<GlobalType>& gs, std::size_t depth,
                                     std::size_t fuel = kDefaultFuel);
std::vector<EquivResult> equiv_batch_serial(const std::vector<GlobalType>& gs, std::size_t depth,
                                            std::size_t fuel = kDefaultFuel);

struct SoundCompleteResult {
  TheoremResult soundness;
  TheoremResult completeness;
};

std::vector<SoundCompleteResult> theorem_batch(const std::vector<GlobalType>& gs, std::size_t depth,
                                               TheoremOptions opts = {});
std::vector<SoundCompleteResult> theorem_batch_serial(const std::vector<GlobalType>& gs, std::size_t depth,
                                                      TheoremOptions opts = {});

}  // namespace mpst::parallel
