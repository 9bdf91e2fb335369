#pragma once

// Euclidean projection onto the convex hull of an explicit vertex list.

#include <span>
#include <vector>

#include "fwcuts/vector_ops.hpp"

namespace fwcuts::testing {

struct Projection {
  std::vector<double> point;  // nearest point of conv(vertices)
  double dist_sq = 0.0;       // |point - x|^2, an upper bound on dist^2
  double dist_sq_lower = 0.0; // certified lower bound from the duality gap
};

/// Wolfe's minimum-norm-point algorithm on the shifted vertices v - x.
Projection project_onto_hull(std::span<const double> x, const std::vector<Vertex>& vertices);

}  // namespace fwcuts::testing
