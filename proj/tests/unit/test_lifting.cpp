#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fwcuts/error.hpp"
#include "fwcuts/lifting.hpp"
#include "fwcuts/oracle.hpp"
#include "fwcuts/separator.hpp"
#include "fwcuts_test/enumeration.hpp"
#include "fwcuts_test/generators.hpp"

namespace fwcuts {
namespace {

using testing::Rng;

void expect_valid(std::span<const double> alpha, double beta, std::span<const std::int64_t> w,
                  std::int64_t c, double tol = 1e-9) {
  for (const auto& v : testing::knapsack_points(w, c)) ASSERT_LE(dot(alpha, v), beta + tol);
}

// Hand-built subproblem over the full row.
KnapsackSubproblem make_sub(std::vector<std::int64_t> row, std::int64_t cap,
                            std::vector<std::size_t> s, std::vector<std::size_t> f0,
                            std::vector<std::size_t> f1) {
  KnapsackSubproblem sub;
  sub.row_weights = row;
  sub.row_capacity = cap;
  sub.capacity = cap;
  for (auto j : f1) sub.capacity -= row[j];
  for (auto j : s) {
    sub.index_map.push_back(j);
    sub.weights.push_back(row[j]);
  }
  sub.fixed_zero = f0;
  sub.fixed_one = f1;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] == 0) sub.unconstrained.push_back(j);
  validate(sub);
  return sub;
}

TEST(Uplift, CoverWithHeavyItem) {
  const auto sub = make_sub({4, 4, 4, 8}, 8, {0, 1, 2}, {3}, {});
  SequentialLifter lifter(sub, std::vector<double>{1, 1, 1}, 2.0);
  EXPECT_DOUBLE_EQ(lifter.uplift(3), 2.0);
  const auto r = lifter.result();
  EXPECT_EQ(r.alpha_full, (std::vector<double>{1, 1, 1, 2}));
  expect_valid(r.alpha_full, r.beta_full, sub.row_weights, 8);
}

TEST(Uplift, ItemThatCannotFitGetsRhs) {
  const auto sub = make_sub({2, 2, 9}, 4, {0, 1}, {2}, {});
  SequentialLifter lifter(sub, std::vector<double>{1, 1}, 2.0);
  EXPECT_DOUBLE_EQ(lifter.uplift(2), 2.0);
}

TEST(Uplift, ZeroInequality) {
  const auto sub = make_sub({3, 2, 2}, 3, {0}, {1, 2}, {});
  const auto r = lift_cut(Cut{{0.0}, 0.0, 0.0, CutSource::kEarlyStop}, sub,
                          LiftingPolicy::kDownThenUp);
  EXPECT_EQ(r.alpha_full, (std::vector<double>{0, 0, 0}));
  expect_valid(r.alpha_full, r.beta_full, sub.row_weights, 3);
}

TEST(Downlift, RestoresCapacity) {
  const auto sub = make_sub({3, 3, 3}, 6, {1, 2}, {}, {0});
  SequentialLifter lifter(sub, std::vector<double>{1, 1}, 1.0);
  EXPECT_DOUBLE_EQ(lifter.downlift(0), 1.0);
  EXPECT_DOUBLE_EQ(lifter.rhs(), 2.0);
  const auto r = lifter.result();
  EXPECT_EQ(r.alpha_full, (std::vector<double>{1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.beta_full, 2.0);
}

TEST(Downlift, NonBindingFixingGetsZero) {
  const auto sub = make_sub({1, 2, 2}, 10, {1, 2}, {}, {0});
  SequentialLifter lifter(sub, std::vector<double>{1, 1}, 2.0);
  EXPECT_DOUBLE_EQ(lifter.downlift(0), 0.0);
  EXPECT_DOUBLE_EQ(lifter.rhs(), 2.0);
}

TEST(Downlift, EmptyProcessedSet) {
  const auto sub = make_sub({3, 5}, 7, {}, {1}, {0});
  SequentialLifter lifter(sub, std::vector<double>{}, 0.0);
  EXPECT_DOUBLE_EQ(lifter.downlift(0), 0.0);
}

TEST(Lifter, RejectsWrongVariables) {
  const auto sub = make_sub({3, 3, 3}, 6, {1}, {2}, {0});
  SequentialLifter lifter(sub, std::vector<double>{1}, 1.0);
  EXPECT_THROW(lifter.uplift(0), ContractViolation);
  EXPECT_THROW(lifter.downlift(2), ContractViolation);
  EXPECT_THROW(lifter.result(), ContractViolation);
  EXPECT_THROW(SequentialLifter(sub, std::vector<double>{1, 1}, 1.0), ContractViolation);
}

TEST(LiftCut, IdentityWithoutFixings) {
  const auto sub = make_sub({2, 3}, 4, {0, 1}, {}, {});
  const auto r = lift_cut(Cut{{1, 1}, 1, 0.2, CutSource::kEarlyStop}, sub, LiftingPolicy::kDownThenUp);
  EXPECT_EQ(r.alpha_full, (std::vector<double>{1, 1}));
  EXPECT_EQ(r.beta_full, 1.0);
  EXPECT_TRUE(r.lifted_coeffs.empty());
}

TEST(LiftCut, EmbeddedDownliftExample) {
  const auto sub = make_sub({3, 3, 3, 4}, 6, {1, 2}, {3}, {0});
  const auto r = lift_cut(Cut{{1, 1}, 1, 0.0, CutSource::kEarlyStop}, sub, LiftingPolicy::kDownOnly);
  EXPECT_EQ(r.alpha_full, (std::vector<double>{1, 1, 1, 0}));
  EXPECT_DOUBLE_EQ(r.beta_full, 2.0);
  EXPECT_EQ(r.order_used, (std::vector<std::size_t>{0}));
}

TEST(LiftCut, RejectsBadOrder) {
  const auto sub = make_sub({3, 3, 3, 4}, 6, {1, 2}, {3}, {0});
  const std::vector<std::size_t> order{0};
  EXPECT_THROW(lift_cut(Cut{{1, 1}, 1, 0, CutSource::kEarlyStop}, sub, LiftingPolicy::kDownThenUp,
                        std::span<const std::size_t>(order)),
               ContractViolation);
}

TEST(LiftCut, ZeroWeightEntriesKeepCoefficientZero) {
  const auto sub = make_sub({0, 3, 3, 3}, 6, {2, 3}, {}, {1});
  const auto r = lift_cut(Cut{{1, 1}, 1, 0, CutSource::kEarlyStop}, sub,
                          LiftingPolicy::kDownThenUp);
  EXPECT_EQ(r.alpha_full, (std::vector<double>{0, 1, 1, 1}));
  expect_valid(r.alpha_full, r.beta_full, sub.row_weights, 6);
}

// Random single-row instances: separate the reduced point, then lift in the
// default order and in random interleavings.
TEST(LiftingProperty, ValidAndViolationPreserved) {
  Rng rng(31);
  int lifted = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const auto ks = testing::random_knapsack(rng, n, 30);
    std::vector<double> x(n);
    for (double& v : x) {
      const double u = testing::uniform(rng, 0, 1);
      v = u < 0.25 ? 0.0 : (u < 0.45 ? 1.0 : testing::uniform(rng, 0, 1));
    }
    double load = 0.0;
    for (std::size_t j = 0; j < n; ++j) load += ks.weights[j] * x[j];
    if (load > ks.capacity) continue;
    const auto reduced = reduce_row(ks.weights, ks.capacity, x);
    if (reduced.empty() || !reduced.sub.forced_zero.empty()) continue;
    const KnapsackOracle oracle(reduced.sub);
    const auto out = separate_lazy_afw(reduced.target, oracle, FwConfig{});
    if (!out.is_separated()) continue;
    const Cut& cut = out.cut();
    const auto& sub = oracle.subproblem();
    for (auto policy : {LiftingPolicy::kDownThenUp, LiftingPolicy::kDownOnly}) {
      std::vector<std::size_t> base(sub.fixed_one);
      if (policy == LiftingPolicy::kDownThenUp)
        base.insert(base.end(), sub.fixed_zero.begin(), sub.fixed_zero.end());
      for (int o = 0; o <= 5; ++o) {
        auto order = base;
        if (o > 0) std::shuffle(order.begin(), order.end(), rng);
        const auto r = lift_cut(cut, sub, policy, std::span<const std::size_t>(order));
        expect_valid(r.alpha_full, r.beta_full, ks.weights, ks.capacity);
        EXPECT_NEAR(r.violation_at(x), cut.violation, 1e-9);
        for (std::size_t s = 0; s < sub.index_map.size(); ++s)
          EXPECT_EQ(r.alpha_full[sub.index_map[s]], cut.alpha[s]);
        double rhs = cut.beta;
        for (auto j : sub.fixed_one) rhs += r.lifted_coeffs.at(j);
        EXPECT_NEAR(r.beta_full, rhs, 1e-9);
        EXPECT_EQ(r.order_used, order);
      }
    }
    ++lifted;
  }
  EXPECT_GT(lifted, 80);
}

}  // namespace
}  // namespace fwcuts
