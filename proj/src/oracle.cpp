#include "fwcuts/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fwcuts/error.hpp"

namespace fwcuts {

Vertex enumerate_lmo(const FeasibilityPredicate& feasible, std::size_t k,
                     std::span<const double> direction) {
  if (k > kMaxEnumerationDimension)
    throw CapacityError("enumeration oracle: dimension " + std::to_string(k) +
                        " exceeds " + std::to_string(kMaxEnumerationDimension));
  if (direction.size() != k)
    throw ContractViolation("enumeration oracle: direction has dimension " +
                            std::to_string(direction.size()) + ", expected " +
                            std::to_string(k));

  Vertex x(k, 0);
  Vertex best;
  double best_value = std::numeric_limits<double>::infinity();
  const std::uint64_t count = std::uint64_t{1} << k;
  // x_0 is the most significant bit, so increasing masks walk {0,1}^k in
  // lexicographic order and the first minimizer found is the smallest one.
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < k; ++i) x[i] = (mask >> (k - 1 - i)) & 1U;
    if (!feasible(x)) continue;
    const double value = dot(direction, x);
    if (best.empty() || value < best_value) {
      best_value = value;
      best = x;
    }
  }
  if (best.empty()) throw InfeasibleError("enumeration oracle: no feasible point");
  return best;
}

EnumerationOracle::EnumerationOracle(std::size_t dimension,
                                     FeasibilityPredicate feasible)
    : dimension_(dimension), feasible_(std::move(feasible)) {
  if (dimension_ > kMaxEnumerationDimension)
    throw CapacityError("enumeration oracle: dimension " +
                        std::to_string(dimension_) + " exceeds " +
                        std::to_string(kMaxEnumerationDimension));
}

Vertex EnumerationOracle::minimize(std::span<const double> direction) const {
  return enumerate_lmo(feasible_, dimension_, direction);
}

void validate(const KnapsackSubproblem& sub) {
  if (sub.index_map.size() != sub.weights.size())
    throw ContractViolation("knapsack subproblem: index map and weights differ in size");
  for (auto w : sub.weights)
    if (w < 1) throw ContractViolation("knapsack subproblem: weights must be >= 1");
  if (sub.capacity < 0)
    throw ContractViolation("knapsack subproblem: negative capacity");

  const std::size_t n = sub.row_weights.size();
  std::vector<int> seen(n, 0);
  auto mark = [&](const std::vector<std::size_t>& set) {
    for (auto j : set) {
      if (j >= n) throw ContractViolation("knapsack subproblem: index out of range");
      ++seen[j];
    }
  };
  mark(sub.index_map);
  mark(sub.fixed_zero);
  mark(sub.fixed_one);
  mark(sub.unconstrained);
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw ContractViolation("knapsack subproblem: index sets do not partition the row");
  for (auto j : sub.forced_zero)
    if (std::find(sub.fixed_zero.begin(), sub.fixed_zero.end(), j) ==
        sub.fixed_zero.end())
      throw ContractViolation("knapsack subproblem: forced-zero index not in F0");
}

KnapsackMax knapsack_dp_max(std::span<const std::int64_t> weights,
                            std::int64_t capacity,
                            std::span<const double> profits) {
  const std::size_t k = weights.size();
  if (profits.size() != k)
    throw ContractViolation("knapsack dp: profits and weights differ in size");
  if (capacity < 0) throw ContractViolation("knapsack dp: negative capacity");
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw ContractViolation("knapsack dp: negative weight");
    total += w;
  }
  const auto cap = static_cast<std::size_t>(std::min(capacity, total));

  // value[c]: best profit with total weight <= c over the items seen so far.
  std::vector<double> value(cap + 1, 0.0);
  std::vector<std::uint8_t> take(k * (cap + 1), 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(profits[i] > 0.0)) continue;
    const auto w = static_cast<std::size_t>(weights[i]);
    if (w > cap) continue;
    std::uint8_t* row = &take[i * (cap + 1)];
    for (std::size_t c = cap + 1; c-- > w;) {
      const double candidate = value[c - w] + profits[i];
      if (candidate > value[c]) {
        value[c] = candidate;
        row[c] = 1;
      }
    }
  }

  KnapsackMax result;
  result.value = value[cap];
  result.solution.assign(k, 0);
  std::size_t c = cap;
  for (std::size_t i = k; i-- > 0;) {
    if (take[i * (cap + 1) + c]) {
      result.solution[i] = 1;
      c -= static_cast<std::size_t>(weights[i]);
    }
  }
  return result;
}

KnapsackMax knapsack_dp_max(const KnapsackSubproblem& sub,
                            std::span<const double> profits) {
  return knapsack_dp_max(sub.weights, sub.capacity, profits);
}

Vertex knapsack_dp_lmo(const KnapsackSubproblem& sub,
                       std::span<const double> direction) {
  if (direction.size() != sub.dimension())
    throw ContractViolation("knapsack oracle: direction has dimension " +
                            std::to_string(direction.size()) + ", expected " +
                            std::to_string(sub.dimension()));
  // min <d, x> == -max <-d, x>; items with d_j >= 0 never help.
  std::vector<double> profits(direction.size());
  for (std::size_t j = 0; j < direction.size(); ++j)
    profits[j] = direction[j] < 0.0 ? -direction[j] : 0.0;
  return knapsack_dp_max(sub.weights, sub.capacity, profits).solution;
}

KnapsackValueTable::KnapsackValueTable(std::int64_t max_capacity) {
  if (max_capacity < 0)
    throw ContractViolation("knapsack value table: negative capacity");
  best_.assign(static_cast<std::size_t>(max_capacity) + 1, 0.0);
}

void KnapsackValueTable::add_item(std::int64_t weight, double profit) {
  if (weight < 0) throw ContractViolation("knapsack value table: negative weight");
  if (!(profit > 0.0)) return;
  const auto w = static_cast<std::size_t>(weight);
  if (w >= best_.size()) return;
  for (std::size_t c = best_.size(); c-- > w;)
    best_[c] = std::max(best_[c], best_[c - w] + profit);
}

double KnapsackValueTable::best(std::int64_t capacity) const {
  if (capacity < 0) return 0.0;
  const auto c = std::min(static_cast<std::size_t>(capacity), best_.size() - 1);
  return best_[c];
}

KnapsackOracle::KnapsackOracle(KnapsackSubproblem sub) : sub_(std::move(sub)) {
  validate(sub_);
}

Vertex KnapsackOracle::minimize(std::span<const double> direction) const {
  return knapsack_dp_lmo(sub_, direction);
}

ReducedRow reduce_row(std::span<const std::int64_t> row_weights,
                      std::int64_t row_capacity,
                      std::span<const double> lp_point, double integrality_tol) {
  const std::size_t n = row_weights.size();
  if (lp_point.size() != n)
    throw ContractViolation("reduce_row: point has dimension " +
                            std::to_string(lp_point.size()) + ", row has " +
                            std::to_string(n));
  double activity = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    activity += static_cast<double>(row_weights[j]) * lp_point[j];
  if (activity > static_cast<double>(row_capacity) + 1e-6)
    throw ContractViolation("reduce_row: point violates the row");

  ReducedRow out;
  KnapsackSubproblem& sub = out.sub;
  sub.row_weights.assign(row_weights.begin(), row_weights.end());
  sub.row_capacity = row_capacity;

  std::int64_t residual = row_capacity;
  std::vector<std::size_t> fractional;
  for (std::size_t j = 0; j < n; ++j) {
    if (row_weights[j] < 0)
      throw ContractViolation("reduce_row: negative weight");
    if (row_weights[j] == 0) {
      sub.unconstrained.push_back(j);
    } else if (lp_point[j] <= integrality_tol) {
      sub.fixed_zero.push_back(j);
    } else if (lp_point[j] >= 1.0 - integrality_tol) {
      sub.fixed_one.push_back(j);
      residual -= row_weights[j];
    } else {
      fractional.push_back(j);
    }
  }
  if (residual < 0)
    throw InfeasibleFixingError("reduce_row: variables at 1 exceed the capacity");
  sub.capacity = residual;

  for (auto j : fractional) {
    if (row_weights[j] > residual) {
      sub.fixed_zero.push_back(j);
      sub.forced_zero.push_back(j);
    } else {
      sub.index_map.push_back(j);
      sub.weights.push_back(row_weights[j]);
      out.target.push_back(lp_point[j]);
    }
  }
  std::sort(sub.fixed_zero.begin(), sub.fixed_zero.end());
  return out;
}

}  // namespace fwcuts
