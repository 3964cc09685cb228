#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/ops.hpp"
#include "mpst/core/types.hpp"
#include "mpst/semantics/config.hpp"
#include "mpst/semantics/queues.hpp"

namespace mpst {

struct ProjectionError {
  enum class Kind { MergeConflict, UnguardedProjection, InternalPartiality, InconsistentQueues };
  Kind kind = Kind::MergeConflict;
  std::optional<Role> role;
  std::vector<std::string> path;  // labels chosen from the root to the failing node
  std::string rule;               // e.g. "proj-cont"
  std::optional<std::pair<LocalType, LocalType>> detail;
  std::optional<std::pair<LocalTree, LocalTree>> tree_detail;
  std::string message;
};

std::string to_string(ProjectionError::Kind k);

struct ProjectOptions {
  // When false, a recursion whose projected body is an unguarded variable
  // is reported as UnguardedProjection instead of becoming End.
  bool collapse_unguarded = true;
};

Expected<LocalType, ProjectionError> project(const GlobalType& g, const Role& r, ProjectOptions opts = {});

using LocalEnv = std::map<Role, LocalType>;
Expected<LocalEnv, ProjectionError> project_all(const GlobalType& g, ProjectOptions opts = {});

// Equality of local types modulo branch order.
bool equal_up_to_branch_order(const LocalType& a, const LocalType& b);
bool equal_up_to_branch_order(const LocalTree& a, const LocalTree& b);

// Tree projection of a runtime configuration, `depth` communication levels deep.
Expected<LocalTree, ProjectionError> config_project(const GlobalConfig& c, const Role& r, std::size_t depth,
                                                    std::size_t fuel = kDefaultFuel);

Expected<QueueEnv, ProjectionError> queue_project(const GlobalConfig& c);

using TreeEnv = std::map<Role, LocalTree>;
struct OneShot {
  TreeEnv env;
  QueueEnv queues;
};

// Projects onto `roles` (normally the participants of the originating
// protocol); roles absent from c project to EndNode.
Expected<OneShot, ProjectionError> one_shot_project(const GlobalConfig& c, const std::set<Role>& roles,
                                                    std::size_t depth, std::size_t fuel = kDefaultFuel);
Expected<OneShot, ProjectionError> one_shot_project(const GlobalConfig& c, std::size_t depth,
                                                    std::size_t fuel = kDefaultFuel);

}  // namespace mpst
