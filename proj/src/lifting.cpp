#include "fwcuts/lifting.hpp"

#include <algorithm>
#include <string>

#include "fwcuts/error.hpp"

namespace fwcuts {

double LiftedCut::violation_at(std::span<const double> point) const {
  if (point.size() != alpha_full.size())
    throw ContractViolation("lifted cut: point has wrong dimension");
  return dot(alpha_full, point) - beta_full;
}

Cut LiftedCut::to_cut(std::span<const double> point) const {
  Cut cut;
  cut.alpha = alpha_full;
  cut.beta = beta_full;
  cut.violation = violation_at(point);
  cut.source = CutSource::kLifted;
  return cut;
}

SequentialLifter::SequentialLifter(const KnapsackSubproblem& sub,
                                   std::span<const double> reduced_alpha,
                                   double reduced_rhs)
    : sub_(sub),
      state_(sub.row_weights.size(), State::kProcessed),
      alpha_(sub.row_weights.size(), 0.0),
      rhs_(reduced_rhs),
      capacity_(sub.capacity),
      table_(std::max<std::int64_t>(sub.row_capacity, 0)) {
  if (reduced_alpha.size() != sub.index_map.size())
    throw ContractViolation("lifting: cut dimension " +
                            std::to_string(reduced_alpha.size()) +
                            " does not match the reduced knapsack (" +
                            std::to_string(sub.index_map.size()) + ")");
  for (auto j : sub.fixed_zero) state_[j] = State::kFixedZero;
  for (auto j : sub.fixed_one) state_[j] = State::kFixedOne;
  for (std::size_t s = 0; s < sub.index_map.size(); ++s) {
    alpha_[sub.index_map[s]] = reduced_alpha[s];
    table_.add_item(sub.weights[s], reduced_alpha[s]);
  }
}

double SequentialLifter::uplift(std::size_t j) {
  if (j >= state_.size() || state_[j] != State::kFixedZero)
    throw ContractViolation("uplift: variable " + std::to_string(j) +
                            " is not an unlifted F0 variable");
  const std::int64_t w = sub_.row_weights[j];
  // x_j = 1 leaves capacity - w_j for the processed variables; when that is
  // negative x_j = 1 is infeasible and the empty selection (value 0) is used.
  const double z = table_.best(capacity_ - w);
  const double beta = rhs_ - z;
  alpha_[j] = beta;
  state_[j] = State::kProcessed;
  table_.add_item(w, beta);
  lifted_[j] = beta;
  order_.push_back(j);
  return beta;
}

double SequentialLifter::downlift(std::size_t j) {
  if (j >= state_.size() || state_[j] != State::kFixedOne)
    throw ContractViolation("downlift: variable " + std::to_string(j) +
                            " is not an unlifted F1 variable");
  const std::int64_t w = sub_.row_weights[j];
  capacity_ += w;
  const double z = table_.best(capacity_);
  const double beta = z - rhs_;
  rhs_ = z;
  alpha_[j] = beta;
  state_[j] = State::kProcessed;
  table_.add_item(w, beta);
  lifted_[j] = beta;
  order_.push_back(j);
  return beta;
}

LiftedCut SequentialLifter::result() const {
  if (std::any_of(state_.begin(), state_.end(),
                  [](State s) { return s == State::kFixedOne; }))
    throw ContractViolation("lifting: F1 variables must all be down-lifted");
  LiftedCut out;
  out.alpha_full = alpha_;
  out.beta_full = rhs_;
  out.lifted_coeffs = lifted_;
  out.order_used = order_;
  return out;
}

LiftedCut lift_cut(const Cut& reduced_cut, const KnapsackSubproblem& sub,
                   LiftingPolicy policy,
                   std::optional<std::span<const std::size_t>> order) {
  std::vector<std::size_t> expected(sub.fixed_one.begin(), sub.fixed_one.end());
  if (policy == LiftingPolicy::kDownThenUp)
    expected.insert(expected.end(), sub.fixed_zero.begin(), sub.fixed_zero.end());

  std::vector<std::size_t> sequence;
  if (order) {
    sequence.assign(order->begin(), order->end());
    auto a = sequence;
    auto b = expected;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw ContractViolation("lift_cut: order is not a permutation of the variables to lift");
  } else {
    sequence = expected;
  }

  SequentialLifter lifter(sub, reduced_cut.alpha, reduced_cut.beta);
  for (auto j : sequence) {
    if (std::find(sub.fixed_one.begin(), sub.fixed_one.end(), j) != sub.fixed_one.end())
      lifter.downlift(j);
    else
      lifter.uplift(j);
  }
  return lifter.result();
}

}  // namespace fwcuts
