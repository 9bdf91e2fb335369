#include <gtest/gtest.h>

#include <numeric>

#include "fwcuts/error.hpp"
#include "fwcuts/oracle.hpp"
#include "fwcuts_test/enumeration.hpp"
#include "fwcuts_test/generators.hpp"

namespace fwcuts {
namespace {

using testing::Rng;

KnapsackSubproblem plain(std::vector<std::int64_t> w, std::int64_t c) {
  KnapsackSubproblem sub;
  sub.weights = w;
  sub.capacity = c;
  sub.index_map.resize(w.size());
  std::iota(sub.index_map.begin(), sub.index_map.end(), 0);
  sub.row_weights = w;
  sub.row_capacity = c;
  return sub;
}

FeasibilityPredicate knapsack_predicate(std::vector<std::int64_t> w, std::int64_t c) {
  return [w, c](const Vertex& v) {
    std::int64_t load = 0;
    for (std::size_t j = 0; j < w.size(); ++j) load += v[j] ? w[j] : 0;
    return load <= c;
  };
}

TEST(EnumerateLmo, ZeroDirectionGivesZeroVector) {
  const std::vector<double> d(4, 0.0);
  EXPECT_EQ(enumerate_lmo([](const Vertex&) { return true; }, 4, d), Vertex(4, 0));
}

TEST(EnumerateLmo, UnitSquare) {
  const std::vector<double> d{0.5, -0.5};
  EXPECT_EQ(enumerate_lmo([](const Vertex&) { return true; }, 2, d), (Vertex{0, 1}));
}

TEST(EnumerateLmo, SmallKnapsack) {
  const std::vector<double> d{-3, -4, -2};
  const Vertex v = enumerate_lmo(knapsack_predicate({2, 3, 4}, 5), 3, d);
  EXPECT_EQ(v, (Vertex{1, 1, 0}));
  EXPECT_DOUBLE_EQ(dot(d, v), -7.0);
}

TEST(EnumerateLmo, RejectsLargeDimension) {
  const std::vector<double> d(26, 1.0);
  EXPECT_THROW(enumerate_lmo([](const Vertex&) { return true; }, 26, d), CapacityError);
}

TEST(EnumerateLmo, NothingFeasible) {
  const std::vector<double> d(3, 1.0);
  EXPECT_THROW(enumerate_lmo([](const Vertex&) { return false; }, 3, d), InfeasibleError);
}

TEST(EnumerateLmo, DimensionMismatchIsContractViolation) {
  const EnumerationOracle oracle(3, [](const Vertex&) { return true; });
  const std::vector<double> d(2, 1.0);
  EXPECT_THROW(oracle.minimize(d), ContractViolation);
}

TEST(KnapsackDpLmo, NonNegativeDirectionGivesZero) {
  const auto sub = plain({2, 3, 4}, 5);
  const std::vector<double> d{0.0, 1.0, 2.5};
  EXPECT_EQ(knapsack_dp_lmo(sub, d), Vertex(3, 0));
}

TEST(KnapsackDpLmo, SmallKnapsack) {
  const auto sub = plain({2, 3, 4}, 5);
  const std::vector<double> d{-3, -4, -2};
  EXPECT_EQ(knapsack_dp_lmo(sub, d), (Vertex{1, 1, 0}));
}

TEST(KnapsackDpLmo, ItemTooHeavy) {
  const auto sub = plain({5}, 4);
  const std::vector<double> d{-10};
  EXPECT_EQ(knapsack_dp_lmo(sub, d), (Vertex{0}));
}

TEST(KnapsackDpMax, NonPositiveProfits) {
  const std::vector<std::int64_t> w{2, 3};
  const std::vector<double> p{-1.0, 0.0};
  const auto r = knapsack_dp_max(w, 5, p);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.solution, (Vertex{0, 0}));
}

TEST(KnapsackDpMax, SmallKnapsack) {
  const std::vector<std::int64_t> w{2, 3, 4};
  const std::vector<double> p{3, 4, 2};
  const auto r = knapsack_dp_max(w, 5, p);
  EXPECT_DOUBLE_EQ(r.value, 7.0);
  EXPECT_EQ(r.solution, (Vertex{1, 1, 0}));
}

TEST(KnapsackDpMax, FractionalProfits) {
  const std::vector<std::int64_t> w{1, 1};
  const std::vector<double> p{0.5, 0.25};
  EXPECT_DOUBLE_EQ(knapsack_dp_max(w, 2, p).value, 0.75);
}

TEST(KnapsackDpMax, ZeroWeightItemsAreTakenWhenProfitable) {
  const std::vector<std::int64_t> w{0, 3};
  const std::vector<double> p{1.5, 1.0};
  const auto r = knapsack_dp_max(w, 2, p);
  EXPECT_DOUBLE_EQ(r.value, 1.5);
  EXPECT_EQ(r.solution, (Vertex{1, 0}));
}

TEST(KnapsackDpProperty, MatchesEnumeration) {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + trial % 16;
    const auto ks = testing::random_knapsack(rng, k, 1 + testing::uniform_int(rng, 0, 19));
    const auto sub = plain(ks.weights, std::min<std::int64_t>(ks.capacity, 100));
    std::vector<double> d(k);
    for (double& x : d) x = testing::uniform(rng, -1.0, 1.0);
    const auto points = testing::knapsack_points(sub.weights, sub.capacity);

    const Vertex v = knapsack_dp_lmo(sub, d);
    std::int64_t load = 0;
    for (std::size_t j = 0; j < k; ++j) load += v[j] ? sub.weights[j] : 0;
    ASSERT_LE(load, sub.capacity);
    const Vertex e = enumerate_lmo(knapsack_predicate(sub.weights, sub.capacity), k, d);
    ASSERT_EQ(dot(d, v), dot(d, e)) << "trial " << trial;

    const auto best = knapsack_dp_max(sub.weights, sub.capacity, d);
    ASSERT_EQ(best.value, testing::max_over(points, d)) << "trial " << trial;
    ASSERT_EQ(dot(d, best.solution), best.value);
  }
}

TEST(KnapsackValueTable, MatchesDpMaxForEveryCapacity) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 10;
    const auto ks = testing::random_knapsack(rng, k, 15);
    std::vector<double> p(k);
    for (double& x : p) x = testing::uniform(rng, -2.0, 3.0);
    KnapsackValueTable table(ks.capacity);
    for (std::size_t j = 0; j < k; ++j) table.add_item(ks.weights[j], p[j]);
    for (std::int64_t c = 0; c <= ks.capacity; ++c)
      ASSERT_NEAR(table.best(c), knapsack_dp_max(ks.weights, c, p).value, 1e-12);
    EXPECT_EQ(table.best(-1), 0.0);
    EXPECT_EQ(table.best(ks.capacity + 5), table.best(ks.capacity));
  }
}

TEST(ReduceRow, IntegralPointGivesEmptySentinel) {
  const std::vector<std::int64_t> w{3, 5, 4};
  const std::vector<double> x{1, 0, 1};
  const auto r = reduce_row(w, 10, x);
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(r.sub.fixed_one, (std::vector<std::size_t>{0, 2}));
}

TEST(ReduceRow, SplitsIntoSetsAndReducesCapacity) {
  const std::vector<std::int64_t> w{3, 5, 4, 2};
  const std::vector<double> x{1, 0.5, 0, 0.5};
  const auto r = reduce_row(w, 10, x);
  EXPECT_EQ(r.sub.index_map, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(r.sub.fixed_one, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.sub.fixed_zero, (std::vector<std::size_t>{2}));
  EXPECT_EQ(r.sub.capacity, 7);
  EXPECT_EQ(r.target, (std::vector<double>{0.5, 0.5}));
  EXPECT_LE(5 * 0.5 + 2 * 0.5, 7.0);
  EXPECT_NO_THROW(validate(r.sub));
}

TEST(ReduceRow, ForcedZero) {
  const std::vector<std::int64_t> w{3, 9};
  const std::vector<double> x{1, 0.7};
  const auto r = reduce_row(w, 10, x);
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(r.sub.forced_zero, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.sub.fixed_zero, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.sub.capacity, 7);
}

TEST(ReduceRow, ZeroWeightEntriesAreUnconstrained) {
  const std::vector<std::int64_t> w{0, 4, 0};
  const std::vector<double> x{0.3, 0.5, 1.0};
  const auto r = reduce_row(w, 3, x);
  EXPECT_EQ(r.sub.unconstrained, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(r.empty());
}

TEST(ReduceRow, ViolatedRowIsRejected) {
  const std::vector<std::int64_t> w{3, 5};
  const std::vector<double> x{1, 1};
  EXPECT_THROW(reduce_row(w, 7, x), ContractViolation);
}

TEST(ReduceRowProperty, ReducedPointsEmbedFeasibly) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 10;
    const auto ks = testing::random_knapsack(rng, n, 20);
    // A feasible fractional point: scale a random point into the row.
    std::vector<double> x(n);
    for (double& v : x) {
      const double u = testing::uniform(rng, 0.0, 1.0);
      v = u < 0.3 ? 0.0 : (u < 0.6 ? 1.0 : testing::uniform(rng, 0.0, 1.0));
    }
    double load = 0.0;
    for (std::size_t j = 0; j < n; ++j) load += ks.weights[j] * x[j];
    if (load > ks.capacity) {
      const double s = ks.capacity / load;
      for (double& v : x) v *= s;
    }
    const auto r = reduce_row(ks.weights, ks.capacity, x);
    ASSERT_NO_THROW(validate(r.sub));
    for (const auto& p : testing::knapsack_points(r.sub.weights, r.sub.capacity)) {
      std::int64_t full = 0;
      for (auto j : r.sub.fixed_one) full += ks.weights[j];
      for (std::size_t s = 0; s < p.size(); ++s) full += p[s] ? r.sub.weights[s] : 0;
      ASSERT_LE(full, ks.capacity);
    }
  }
}

}  // namespace
}  // namespace fwcuts
