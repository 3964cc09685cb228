#pragma once

#include <random>
#include <vector>

#include "mpst/core/types.hpp"
#include "mpst/process/ast.hpp"
#include "mpst/process/lts.hpp"
#include "mpst/process/typing.hpp"

namespace mpst::testing {

using Rng = std::mt19937_64;

struct GlobalGen {
  std::size_t roles = 3;     // drawn from A, B, C, ...
  std::size_t branches = 2;  // at most this many per message
  std::size_t depth = 4;     // nesting of Rec and Msg nodes
};

// Closed and guarded by construction.
GlobalType random_global(Rng& rng, const GlobalGen& gen);
// Rejection-samples random_global until every participant projects.
GlobalType random_projectable(Rng& rng, const GlobalGen& gen);
std::vector<GlobalType> random_projectable_batch(std::uint64_t seed, std::size_t n, const GlobalGen& gen = {});

// Closed and guarded local types over the given peers.
LocalType random_local(Rng& rng, std::size_t depth, std::size_t binders = 0);

Sort random_sort(Rng& rng, std::size_t depth);
Value random_value(Rng& rng, const Sort& s);

struct ProcGen {
  std::size_t depth = 4;
  std::size_t labels = 2;
};

// Externs the generated processes may call, and pure stubs for them.
ExternSigs generated_externs();
StubRegistry generated_stubs();

// Well-typed (under generated_externs) processes talking to peers P and Q.
Proc random_proc(Rng& rng, const ProcGen& gen);

}  // namespace mpst::testing
