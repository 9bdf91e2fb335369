#include "fwcuts/separator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fwcuts/active_set.hpp"
#include "fwcuts/error.hpp"

namespace fwcuts {

void FwConfig::validate() const {
  if (max_iters < 1) throw ContractViolation("fw config: max_iters must be >= 1");
  if (!(epsilon > 0.0)) throw ContractViolation("fw config: epsilon must be > 0");
  if (!(lazification_factor > 1.0))
    throw ContractViolation("fw config: lazification factor must be > 1");
  if (!(gap_tolerance >= 0.0))
    throw ContractViolation("fw config: gap tolerance must be >= 0");
}

Cut Cut::normalized() const {
  double scale = 0.0;
  for (double a : alpha) scale = std::max(scale, std::abs(a));
  Cut out = *this;
  if (scale == 0.0) return out;
  for (double& a : out.alpha) a /= scale;
  out.beta /= scale;
  out.violation /= scale;
  return out;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kEpsilonMembership: return "epsilon-membership";
    case StopReason::kEarlyCriterion: return "early-criterion";
    case StopReason::kZeroGradient: return "zero-gradient";
    case StopReason::kGapTolerance: return "gap-tolerance";
    case StopReason::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

std::string_view to_string(CutSource source) {
  switch (source) {
    case CutSource::kFwConverged: return "fw-converged";
    case CutSource::kEarlyStop: return "early-stop";
    case CutSource::kLifted: return "lifted";
  }
  return "unknown";
}

namespace {

void check_dimensions(std::span<const double> target, const LinearOracle& oracle) {
  if (target.size() != oracle.dimension())
    throw ContractViolation("separator: target has dimension " +
                            std::to_string(target.size()) + ", oracle has " +
                            std::to_string(oracle.dimension()));
  for (double x : target)
    if (!std::isfinite(x)) throw ContractViolation("separator: non-finite target entry");
}

// Cut <x~ - y, x> <= <x~ - y, v> from a true oracle answer v at y.
Cut gradient_cut(std::span<const double> iterate, std::span<const double> target,
                 const Vertex& v, CutSource source) {
  Cut cut;
  cut.alpha.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) cut.alpha[i] = target[i] - iterate[i];
  cut.beta = dot(cut.alpha, v);
  cut.violation = dot(cut.alpha, target) - cut.beta;
  cut.source = source;
  return cut;
}

double objective(std::span<const double> gradient) {
  return 0.5 * squared_norm(gradient);
}

bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Stop at a true oracle answer `v` at iterate y: either the duality test
// fires, or the FW gap dropped below the tolerance.
std::optional<SeparationOutcome> test_oracle_answer(
    std::span<const double> iterate, std::span<const double> target,
    std::span<const double> gradient, const Vertex& v, double f,
    const FwConfig& config, SeparationStats& stats) {
  const double gap = gradient_gap(gradient, iterate, v);
  if (config.early_termination && gap < f) {
    stats.stop_reason = StopReason::kEarlyCriterion;
    return SeparationOutcome{
        Separated{gradient_cut(iterate, target, v, CutSource::kEarlyStop)}, stats};
  }
  if (gap <= config.gap_tolerance) {
    stats.stop_reason = StopReason::kGapTolerance;
    Cut cut = gradient_cut(iterate, target, v, CutSource::kFwConverged);
    if (cut.violation > 0.0) return SeparationOutcome{Separated{std::move(cut)}, stats};
    return SeparationOutcome{Undecided{f}, stats};
  }
  return std::nullopt;
}

double step_size(StepRule rule, int t, std::span<const double> iterate,
                 std::span<const double> target, std::span<const double> direction,
                 double gamma_max) {
  if (rule == StepRule::kAgnostic)
    return std::min(2.0 / (static_cast<double>(t) + 2.0), gamma_max);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < direction.size(); ++i) {
    num += (target[i] - iterate[i]) * direction[i];
    den += direction[i] * direction[i];
  }
  if (den == 0.0) return 0.0;
  return std::clamp(num / den, 0.0, gamma_max);
}

}  // namespace

double gradient_gap(std::span<const double> gradient,
                    std::span<const double> iterate, const Vertex& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < gradient.size(); ++i)
    s += gradient[i] * (iterate[i] - static_cast<double>(v[i]));
  return s;
}

double fw_gap(std::span<const double> iterate, std::span<const double> target,
              const Vertex& lmo_vertex) {
  if (iterate.size() != target.size() || lmo_vertex.size() != target.size())
    throw ContractViolation("fw_gap: dimension mismatch");
  std::vector<double> gradient(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) gradient[i] = iterate[i] - target[i];
  return gradient_gap(gradient, iterate, lmo_vertex);
}

EarlyStopResult early_stop_check(std::span<const double> iterate,
                                 std::span<const double> target,
                                 const Vertex& candidate_vertex) {
  const double gap = fw_gap(iterate, target, candidate_vertex);
  std::vector<double> gradient(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) gradient[i] = iterate[i] - target[i];
  EarlyStopResult result;
  if (gap < objective(gradient)) {
    result.fires = true;
    result.cut = gradient_cut(iterate, target, candidate_vertex, CutSource::kEarlyStop);
  }
  return result;
}

SeparationOutcome separate_vanilla(std::span<const double> target,
                                   const LinearOracle& oracle,
                                   const FwConfig& config) {
  config.validate();
  check_dimensions(target, oracle);
  const std::size_t k = target.size();

  SeparationStats stats;
  std::vector<double> negated(k);
  for (std::size_t i = 0; i < k; ++i) negated[i] = -target[i];
  std::vector<double> y = to_real(oracle.minimize(negated));
  ++stats.oracle_calls;

  std::vector<double> gradient(k);
  std::vector<double> direction(k);
  for (int t = 0;; ++t) {
    for (std::size_t i = 0; i < k; ++i) gradient[i] = y[i] - target[i];
    const double f = objective(gradient);
    stats.iterations = t;
    stats.final_f = f;
    if (is_zero(gradient)) {
      stats.stop_reason = StopReason::kZeroGradient;
      return {Membership{f}, stats};
    }
    if (f < config.epsilon) {
      stats.stop_reason = StopReason::kEpsilonMembership;
      return {Membership{f}, stats};
    }
    if (t == config.max_iters) {
      stats.stop_reason = StopReason::kIterationLimit;
      return {Undecided{f}, stats};
    }

    const Vertex v = oracle.minimize(gradient);
    ++stats.oracle_calls;
    if (auto done = test_oracle_answer(y, target, gradient, v, f, config, stats))
      return *std::move(done);

    for (std::size_t i = 0; i < k; ++i) direction[i] = static_cast<double>(v[i]) - y[i];
    const double gamma = step_size(config.step_rule, t, y, target, direction, 1.0);
    for (std::size_t i = 0; i < k; ++i) y[i] += gamma * direction[i];
  }
}

SeparationOutcome separate_lazy_afw(std::span<const double> target,
                                    const LinearOracle& oracle,
                                    const FwConfig& config) {
  config.validate();
  check_dimensions(target, oracle);
  const std::size_t k = target.size();
  const double lazy_divisor = config.lazification_factor;

  SeparationStats stats;
  std::vector<double> negated(k);
  for (std::size_t i = 0; i < k; ++i) negated[i] = -target[i];
  ActiveSet active(k);
  active.reset(oracle.minimize(negated));
  ++stats.oracle_calls;

  std::vector<double> y(k);
  std::vector<double> gradient(k);
  std::vector<double> direction(k);
  double phi = 0.0;

  for (int t = 0;; ++t) {
    std::copy(active.iterate().begin(), active.iterate().end(), y.begin());
    for (std::size_t i = 0; i < k; ++i) gradient[i] = y[i] - target[i];
    const double f = objective(gradient);
    stats.iterations = t;
    stats.final_f = f;
    if (is_zero(gradient)) {
      stats.stop_reason = StopReason::kZeroGradient;
      return {Membership{f}, stats};
    }
    if (f < config.epsilon) {
      stats.stop_reason = StopReason::kEpsilonMembership;
      return {Membership{f}, stats};
    }
    if (t == config.max_iters) {
      stats.stop_reason = StopReason::kIterationLimit;
      return {Undecided{f}, stats};
    }

    enum class Move { kToward, kAway, kNone };
    Move move = Move::kNone;
    Vertex toward;
    std::size_t away_index = 0;
    double gamma_max = 1.0;
    std::optional<Vertex> fresh;  // true oracle answer at y, if any
    double proxy_gap = 0.0;       // <grad, y - v_L>, a lower bound on the FW gap

    auto call_oracle = [&] {
      fresh = oracle.minimize(gradient);
      ++stats.oracle_calls;
      return gradient_gap(gradient, y, *fresh);
    };
    auto away_bound = [&](std::size_t index) {
      const double weight = active.entry(index).weight;
      return weight / (1.0 - weight);
    };

    if (t == 0) {
      phi = call_oracle();
      move = Move::kToward;
      toward = *fresh;
    } else {
      const std::size_t local = active.argmin(gradient);
      const std::size_t away = active.argmax(gradient);
      proxy_gap = gradient_gap(gradient, y, active.entry(local).vertex);
      const bool can_away = active.size() > 1;
      const double away_gap =
          can_away ? -gradient_gap(gradient, y, active.entry(away).vertex) : 0.0;

      if (config.lazy) {
        if (proxy_gap >= std::max(away_gap, phi / lazy_divisor)) {
          move = Move::kToward;
          toward = active.entry(local).vertex;
          ++stats.lazy_hits;
        } else if (can_away && away_gap >= std::max(proxy_gap, phi / lazy_divisor)) {
          move = Move::kAway;
          away_index = away;
          gamma_max = away_bound(away);
        } else {
          const double gap = call_oracle();
          if (gap < phi / lazy_divisor) {
            phi = std::min(gap, phi / lazy_divisor);
            ++stats.dual_steps;
          } else {
            move = Move::kToward;
            toward = *fresh;
          }
        }
      } else {
        const double gap = call_oracle();
        if (can_away && away_gap > gap) {
          move = Move::kAway;
          away_index = away;
          gamma_max = away_bound(away);
        } else {
          move = Move::kToward;
          toward = *fresh;
        }
      }
    }

    // The duality test is only sound against a true oracle answer; a lazy or
    // away iteration whose proxy would fire gets one confirming call.
    if (!fresh && config.early_termination && proxy_gap < f) {
      ++stats.confirmations;
      call_oracle();
    }
    if (fresh) {
      if (auto done = test_oracle_answer(y, target, gradient, *fresh, f, config, stats))
        return *std::move(done);
    }

    if (move == Move::kNone) continue;
    if (move == Move::kToward) {
      for (std::size_t i = 0; i < k; ++i)
        direction[i] = static_cast<double>(toward[i]) - y[i];
    } else {
      const Vertex& va = active.entry(away_index).vertex;
      for (std::size_t i = 0; i < k; ++i)
        direction[i] = y[i] - static_cast<double>(va[i]);
    }
    const double gamma = step_size(config.step_rule, t, y, target, direction, gamma_max);
    if (move == Move::kToward) {
      active.move_towards(toward, gamma);
    } else {
      active.move_away(away_index, gamma);
      ++stats.away_steps;
    }
  }
}

long long iteration_bound(double diameter_sq, double dist_sq) {
  if (dist_sq == 0.0)
    throw UndefinedBoundError("iteration bound: target lies in the polytope");
  if (!(dist_sq > 0.0)) throw ContractViolation("iteration bound: dist_sq must be > 0");
  if (!(diameter_sq > 0.0))
    throw ContractViolation("iteration bound: diameter_sq must be > 0");
  const double t = std::ceil(8.0 * diameter_sq / dist_sq - 3.0);
  return std::max<long long>(1, static_cast<long long>(t));
}

ConvergenceBound make_convergence_bound(double diameter_sq, double dist_sq) {
  return {diameter_sq, dist_sq, iteration_bound(diameter_sq, dist_sq)};
}

}  // namespace fwcuts
