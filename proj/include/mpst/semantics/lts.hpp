#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/ops.hpp"
#include "mpst/projection/projection.hpp"
#include "mpst/semantics/action.hpp"
#include "mpst/semantics/config.hpp"
#include "mpst/semantics/queues.hpp"

namespace mpst {

struct SemanticsError {
  enum class Kind { NotEnabled, FuelExhausted, Ambiguous, Projection };
  Kind kind = Kind::NotEnabled;
  std::string message;
};

std::string to_string(SemanticsError::Kind k);

struct GlobalStep {
  Action action;
  GlobalConfig next;
  friend bool operator==(const GlobalStep&, const GlobalStep&) = default;
};

// All transitions of c, ordered by action and then by successor.
Expected<std::vector<GlobalStep>, SemanticsError> global_enabled(const GlobalConfig& c,
                                                                 std::size_t fuel = kDefaultFuel);

struct StepOptions {
  std::size_t fuel = kDefaultFuel;
  bool strict = false;  // report Ambiguous instead of taking the first successor
};

Expected<GlobalConfig, SemanticsError> global_step(const GlobalConfig& c, const Action& a, StepOptions opts = {});

// --- local environments --------------------------------------------------

struct LocalStep {
  Action action;
  LocalEnv env;
  QueueEnv queues;
};

std::vector<LocalStep> local_enabled(const LocalEnv& e, const QueueEnv& q, std::size_t fuel = kDefaultFuel);
bool local_terminated(const LocalEnv& e, const QueueEnv& q, std::size_t fuel = kDefaultFuel);

// Single-role step on a local type (subject = self).
std::optional<LocalType> local_type_step(const LocalType& l, const Role& self, const Action& a,
                                         std::size_t fuel = kDefaultFuel);

// The same LTS over environments of bounded trees. Cut nodes never step.
struct TreeStep {
  Action action;
  TreeEnv env;
  QueueEnv queues;
};
std::vector<TreeStep> tree_enabled(const TreeEnv& e, const QueueEnv& q);

// --- traces ----------------------------------------------------------------

Expected<Traces, SemanticsError> traces_global(const GlobalConfig& c, std::size_t depth,
                                               std::size_t fuel = kDefaultFuel);
Traces traces_local(const LocalEnv& e, const QueueEnv& q, std::size_t depth, std::size_t fuel = kDefaultFuel);

enum class TraceSide { GlobalOnly, LocalOnly };

struct EquivReport {
  std::size_t depth = 0;
  std::size_t global_trace_count = 0;
  std::size_t local_trace_count = 0;
  bool equal = true;
  // Shortest trace (then least) in the symmetric difference.
  std::optional<Trace> counterexample;
  std::optional<TraceSide> side;
  bool counterexample_is_completion = false;
};

Expected<EquivReport, SemanticsError> compare_traces(const Traces& global, const Traces& local, std::size_t depth);
Expected<EquivReport, SemanticsError> check_trace_equiv(const GlobalType& g, const LocalEnv& e, std::size_t depth,
                                                        std::size_t fuel = kDefaultFuel);
// Projects every participant first.
Expected<EquivReport, SemanticsError> check_trace_equiv(const GlobalType& g, std::size_t depth,
                                                        std::size_t fuel = kDefaultFuel);

// --- step soundness / completeness ----------------------------------------

struct TheoremViolation {
  Trace path;  // actions from the initial configuration to `config`
  GlobalConfig config;
  std::optional<Action> action;
  std::string detail;
};

struct TheoremReport {
  std::size_t configs_checked = 0;
  std::size_t steps_checked = 0;
  std::optional<TheoremViolation> violation;
  bool ok() const { return !violation; }
};

struct TheoremOptions {
  std::size_t tree_depth = 8;
  std::size_t fuel = kDefaultFuel;
};

// Single-configuration checks against a supplied projection (E, Q).
// Soundness: each global step is matched by a local step to a projection of
// the successor. Completeness: each local step is matched by a global step.
std::optional<std::string> soundness_at(const GlobalConfig& c, const std::set<Role>& roles, const OneShot& proj,
                                        TheoremOptions opts, std::optional<Action>* failing = nullptr);
std::optional<std::string> completeness_at(const GlobalConfig& c, const std::set<Role>& roles,
                                           const OneShot& proj, TheoremOptions opts,
                                           std::optional<Action>* failing = nullptr);

// Breadth-first over the configurations reachable from g in at most
// `depth` steps.
Expected<TheoremReport, SemanticsError> check_step_soundness(const GlobalType& g, std::size_t depth,
                                                             TheoremOptions opts = {});
Expected<TheoremReport, SemanticsError> check_step_completeness(const GlobalType& g, std::size_t depth,
                                                                TheoremOptions opts = {});

}  // namespace mpst
