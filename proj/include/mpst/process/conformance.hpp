#pragma once

#include <optional>
#include <string>

#include "mpst/core/expected.hpp"
#include "mpst/process/lts.hpp"
#include "mpst/projection/projection.hpp"
#include "mpst/semantics/lts.hpp"

namespace mpst {

// t1 is the p-subsequence of t2: non-p actions of t2 are skipped, p actions
// must match t1 in order, and t1 must be used up.
bool subtrace_check(const Trace& t1, const Trace& t2, const Role& p);

struct ConformanceOptions {
  std::size_t depth = 4;        // process trace depth
  std::size_t type_depth = 0;   // tree depth for stage 2; 0 means `depth`
  int stages = 3;
  ValueUniverse universe;
  std::size_t fuel = kDefaultFuel;
};

struct ConformanceReport {
  bool ok = false;
  int failed_stage = 0;  // 0 when ok
  std::string message;
  std::string rule;
  std::optional<LocalType> synthesized;
  std::optional<LocalType> projected;
  std::size_t process_traces = 0;  // distinct erased traces checked at stage 3
  std::size_t global_depth = 0;
  std::optional<Trace> unmatched;
};

// Stages: (1) typing, (2) bounded equality with the projection,
// (3) every erased process trace is the complete subtrace of a global trace
// of depth depth * |participants|.
ConformanceReport check_conformance(const Proc& p, const GlobalType& g, const Role& r, const StubRegistry& stubs,
                                    const ConformanceOptions& opts);

// Stage 3 alone for one erased trace.
Expected<bool, SemanticsError> global_admits(const GlobalType& g, const Trace& tp, const Role& r,
                                             std::size_t global_depth, std::size_t fuel = kDefaultFuel);

}  // namespace mpst
