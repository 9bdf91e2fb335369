#pragma once

// Seeded random instance generators shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fwcuts/instance.hpp"
#include "fwcuts/vector_ops.hpp"

namespace fwcuts::testing {

using Rng = std::mt19937_64;

struct RandomKnapsack {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
};

/// Weights uniform in [1, max_weight], capacity uniform in
/// [max_j w_j / 2, sum_j w_j - 1] so the row actually cuts the cube.
RandomKnapsack random_knapsack(Rng& rng, std::size_t k, std::int64_t max_weight);

double uniform(Rng& rng, double lo, double hi);
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Uniform point of the probability simplex of the given size.
std::vector<double> simplex_weights(Rng& rng, std::size_t size);

/// Random convex combination of `count` (distinct when possible) points.
std::vector<double> random_hull_point(Rng& rng, const std::vector<Vertex>& points, std::size_t count);

/// a_ij ~ U{0..1000}, b_i = floor(tightness * sum_j a_ij),
/// c_j = floor(sum_i a_ij / m + 500 q_j) with q_j ~ U(0, 1).
MkpInstance chu_beasley(Rng& rng, std::size_t n, std::size_t m, double tightness,
                        const std::string& name);

}  // namespace fwcuts::testing
