#pragma once

// Linear minimization oracles over implicitly described 0/1 polytopes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fwcuts/vector_ops.hpp"

namespace fwcuts {

/// Contract: minimize() returns a feasible 0/1 point that exactly minimizes
/// <direction, x> over the feasible set, deterministically. Implementations are
/// immutable after construction and minimize() is reentrant.
class LinearOracle {
 public:
  virtual ~LinearOracle() = default;
  virtual std::size_t dimension() const = 0;
  virtual Vertex minimize(std::span<const double> direction) const = 0;
};

using FeasibilityPredicate = std::function<bool(const Vertex&)>;

/// Largest dimension the enumeration oracle accepts.
inline constexpr std::size_t kMaxEnumerationDimension = 25;

/// Exact argmin of <direction, x> over all x in {0,1}^k accepted by
/// `feasible`, ties broken towards the lexicographically smallest vector.
/// Throws CapacityError for k > 25 and InfeasibleError if nothing is feasible.
Vertex enumerate_lmo(const FeasibilityPredicate& feasible, std::size_t k,
                     std::span<const double> direction);

class EnumerationOracle final : public LinearOracle {
 public:
  EnumerationOracle(std::size_t dimension, FeasibilityPredicate feasible);

  std::size_t dimension() const override { return dimension_; }
  Vertex minimize(std::span<const double> direction) const override;

 private:
  std::size_t dimension_;
  FeasibilityPredicate feasible_;
};

/// A single 0/1 knapsack row restricted to its fractional support S, together
/// with the index sets that map it back to the original row.
///
/// Indices in `index_map`, `fixed_zero`, `fixed_one`, `forced_zero` and
/// `unconstrained` refer to the original n variables; they partition [n]
/// (forced_zero is a subset of fixed_zero). `unconstrained` collects entries
/// whose row weight is 0.
struct KnapsackSubproblem {
  std::vector<std::int64_t> weights;  // reduced weights, one per entry of S
  std::int64_t capacity = 0;          // row capacity minus the weight of F1
  std::vector<std::size_t> index_map;
  std::vector<std::size_t> fixed_zero;
  std::vector<std::size_t> fixed_one;
  std::vector<std::size_t> forced_zero;
  std::vector<std::size_t> unconstrained;
  std::vector<std::int64_t> row_weights;
  std::int64_t row_capacity = 0;

  std::size_t dimension() const { return weights.size(); }
  bool empty() const { return weights.empty(); }
};

/// Throws ContractViolation unless weights >= 1, capacity >= 0 and the index
/// sets partition the original row.
void validate(const KnapsackSubproblem& sub);

/// Exact argmin of <direction, x> over {x in {0,1}^k : <w, x> <= C} by dynamic
/// programming in O(kC).
Vertex knapsack_dp_lmo(const KnapsackSubproblem& sub,
                       std::span<const double> direction);

struct KnapsackMax {
  double value = 0.0;
  Vertex solution;
};

/// Exact max of <profits, x> over {x in {0,1}^k : <w, x> <= C}. Profits may be
/// fractional or negative; weights may be 0. Ties prefer leaving items out.
KnapsackMax knapsack_dp_max(std::span<const std::int64_t> weights,
                            std::int64_t capacity,
                            std::span<const double> profits);
KnapsackMax knapsack_dp_max(const KnapsackSubproblem& sub,
                            std::span<const double> profits);

/// Best value over items added so far, for every capacity 0..max_capacity.
/// Items are added one at a time in O(max_capacity); used by sequential
/// lifting where each lifted variable joins the DP right after its
/// coefficient is known.
class KnapsackValueTable {
 public:
  explicit KnapsackValueTable(std::int64_t max_capacity);

  void add_item(std::int64_t weight, double profit);

  /// Maximum over added items with total weight <= capacity; 0 (the empty
  /// selection) when capacity < 0.
  double best(std::int64_t capacity) const;

  std::int64_t max_capacity() const {
    return static_cast<std::int64_t>(best_.size()) - 1;
  }

 private:
  std::vector<double> best_;
};

class KnapsackOracle final : public LinearOracle {
 public:
  explicit KnapsackOracle(KnapsackSubproblem sub);

  std::size_t dimension() const override { return sub_.dimension(); }
  Vertex minimize(std::span<const double> direction) const override;
  const KnapsackSubproblem& subproblem() const { return sub_; }

 private:
  KnapsackSubproblem sub_;
};

struct ReducedRow {
  KnapsackSubproblem sub;
  std::vector<double> target;  // lp_point restricted to S

  bool empty() const { return sub.empty(); }
};

inline constexpr double kDefaultIntegralityTol = 1e-6;

/// Removes the entries of a knapsack row that are integral in `lp_point`:
/// S = fractional entries, F0 / F1 = entries at 0 / 1, and fractional items
/// heavier than the residual capacity are moved to F0 (forced zero). The
/// returned `sub.empty()` is the sentinel for "nothing left to separate".
/// Throws InfeasibleFixingError when F1 alone overflows the row.
ReducedRow reduce_row(std::span<const std::int64_t> row_weights,
                      std::int64_t row_capacity,
                      std::span<const double> lp_point,
                      double integrality_tol = kDefaultIntegralityTol);

}  // namespace fwcuts
