#pragma once

// Sequential up- and down-lifting of an inequality valid for a reduced
// knapsack back to the full single-row knapsack.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fwcuts/oracle.hpp"
#include "fwcuts/separator.hpp"

namespace fwcuts {

enum class LiftingPolicy {
  kDownThenUp,  // down-lift F1, then up-lift F0
  kDownOnly,    // down-lift F1; F0 keeps coefficient 0
};

struct LiftedCut {
  std::vector<double> alpha_full;
  double beta_full = 0.0;
  std::map<std::size_t, double> lifted_coeffs;  // j in F0 u F1 -> beta_j
  std::vector<std::size_t> order_used;

  /// <alpha_full, x> - beta_full.
  double violation_at(std::span<const double> point) const;
  Cut to_cut(std::span<const double> point) const;
};

/// Holds <alpha, x> <= rhs over the processed variables together with a DP
/// table of the best left-hand side per capacity, so that every lifting step
/// costs one knapsack query plus one O(C) table update.
class SequentialLifter {
 public:
  /// `reduced_alpha` is indexed like `sub.index_map`; the inequality must be
  /// valid for the reduced knapsack of `sub`.
  SequentialLifter(const KnapsackSubproblem& sub,
                   std::span<const double> reduced_alpha, double reduced_rhs);

  /// j in F0, currently fixed at 0. beta_j = rhs - max{lhs : capacity - w_j}.
  double uplift(std::size_t j);

  /// j in F1, currently fixed at 1. beta_j = max{lhs : capacity + w_j} - rhs,
  /// and the right-hand side grows by beta_j.
  double downlift(std::size_t j);

  double rhs() const { return rhs_; }
  std::int64_t capacity() const { return capacity_; }
  const std::vector<double>& alpha() const { return alpha_; }
  bool processed(std::size_t j) const { return state_[j] == State::kProcessed; }

  LiftedCut result() const;

 private:
  enum class State : std::uint8_t { kProcessed, kFixedZero, kFixedOne };

  const KnapsackSubproblem& sub_;
  std::vector<State> state_;
  std::vector<double> alpha_;
  double rhs_;
  std::int64_t capacity_;
  KnapsackValueTable table_;
  std::map<std::size_t, double> lifted_;
  std::vector<std::size_t> order_;
};

/// Lifts a cut over S to the original row. `order`, when given, lists the
/// variables to lift (F1 u F0 for kDownThenUp, F1 for kDownOnly) in any
/// interleaving; the default is F1 ascending, then F0 ascending.
LiftedCut lift_cut(const Cut& reduced_cut, const KnapsackSubproblem& sub,
                   LiftingPolicy policy,
                   std::optional<std::span<const std::size_t>> order = std::nullopt);

}  // namespace fwcuts
