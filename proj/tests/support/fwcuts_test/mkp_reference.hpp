#pragma once

// Exact MKP optimum by depth-first branch and bound.

#include <cstdint>
#include <optional>

#include "fwcuts/instance.hpp"

namespace fwcuts::testing {

struct MkpOptimum {
  std::optional<std::int64_t> value;  // nullopt only when the node limit is hit
  std::int64_t nodes = 0;
};

/// Node bounds are Lagrangian bounds L(u) = sum_{x_j=1} c_j + u.r +
/// sum_free max(0, c_j - u.a_j) with u >= 0 taken from the node LP. Any
/// u >= 0 gives a valid bound, so the search is exact even if the LP duals
/// are imprecise. Assignment groups are not supported.
MkpOptimum solve_mkp_exact(const MkpInstance& instance, std::int64_t node_limit = 200000000);

}  // namespace fwcuts::testing
