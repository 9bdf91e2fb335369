#include <gtest/gtest.h>

#include <cmath>

#include "fwcuts/lp.hpp"
#include "fwcuts_test/enumeration.hpp"
#include "fwcuts_test/generators.hpp"
#include "fwcuts_test/mkp_reference.hpp"
#include "fwcuts_test/projection.hpp"

namespace fwcuts::testing {
namespace {

TEST(KnapsackPoints, CountAndOrder) {
  const std::vector<std::int64_t> w{2, 3, 4};
  const auto pts = knapsack_points(w, 5);
  // 000, 001, 010, 100, 110
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_EQ(pts.front(), (Vertex{0, 0, 0}));
  EXPECT_EQ(pts[1], (Vertex{0, 0, 1}));
  EXPECT_EQ(pts.back(), (Vertex{1, 1, 0}));
  EXPECT_EQ(knapsack_points(w, 9).size(), 8u);
  EXPECT_EQ(knapsack_points(w, 0).size(), 1u);
}

TEST(KnapsackPoints, CountMatchesClosedFormForEqualWeights) {
  // k items of weight 1 with capacity c: sum_{i<=c} binom(k, i) points.
  for (std::size_t k = 1; k <= 10; ++k)
    for (std::int64_t c = 0; c <= static_cast<std::int64_t>(k); ++c) {
      double expected = 0.0, binom = 1.0;
      for (std::int64_t i = 0; i <= c; ++i) {
        expected += binom;
        binom = binom * static_cast<double>(static_cast<std::int64_t>(k) - i) /
                static_cast<double>(i + 1);
      }
      EXPECT_EQ(static_cast<double>(knapsack_points(std::vector<std::int64_t>(k, 1), c).size()),
                expected);
    }
}

TEST(BruteForceMkp, TwoVariableExample) {
  const auto inst = parse_mknap("1  2 1 6  6 4  3 5  7")[0];
  EXPECT_DOUBLE_EQ(brute_force_mkp(inst), 6.0);
}

TEST(ExactMkp, AgreesWithBruteForce) {
  Rng rng(71);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 4 + trial % 15;
    const std::size_t m = 1 + trial % 5;
    const auto inst = chu_beasley(rng, n, m, 0.25 * (1 + trial % 3), "b");
    const auto exact = solve_mkp_exact(inst);
    ASSERT_TRUE(exact.value.has_value());
    EXPECT_EQ(static_cast<double>(*exact.value), brute_force_mkp(inst)) << "trial " << trial;
  }
}

TEST(ChuBeasley, Shape) {
  Rng rng(72);
  const auto inst = chu_beasley(rng, 50, 5, 0.25, "cb");
  EXPECT_NO_THROW(inst.validate());
  EXPECT_NEAR(inst.tightness(), 0.25, 0.01);
  for (std::size_t i = 0; i < inst.m; ++i)
    for (auto w : inst.weights[i]) {
      EXPECT_GE(w, 0);
      EXPECT_LE(w, 1000);
    }
}

TEST(Projection, MatchesMembershipTest) {
  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const auto knap = random_knapsack(rng, k, 20);
    const auto pts = knapsack_points(knap.weights, knap.capacity);
    std::vector<double> x(k);
    if (trial % 2) {
      x = random_hull_point(rng, pts, 3);
    } else {
      for (auto& v : x) v = uniform(rng, 0.0, 1.0);
    }
    const auto proj = project_onto_hull(x, pts);
    EXPECT_LE(proj.dist_sq_lower, proj.dist_sq + 1e-12);
    EXPECT_GE(proj.dist_sq_lower, 0.0);
    const auto mem = membership_test(x, pts);
    if (proj.dist_sq_lower > 1e-8) EXPECT_FALSE(mem.inside) << "trial " << trial;
    if (mem.inside) EXPECT_LT(proj.dist_sq, 1e-8);
    if (trial % 2) EXPECT_LT(proj.dist_sq, 1e-10);
  }
}

TEST(Projection, KnownDistance) {
  const std::vector<Vertex> pts{{0, 0}, {1, 0}, {0, 1}};
  const std::vector<double> x{1, 1};
  const auto proj = project_onto_hull(x, pts);
  EXPECT_NEAR(proj.dist_sq, 0.5, 1e-12);
  EXPECT_NEAR(proj.point[0], 0.5, 1e-12);
  EXPECT_NEAR(proj.dist_sq_lower, 0.5, 1e-9);
}

}  // namespace
}  // namespace fwcuts::testing
