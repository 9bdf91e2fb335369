#pragma once

// Separation of a point from a 0/1 polytope known only through a linear
// minimization oracle, by projecting the point onto the polytope with
// Frank-Wolfe and stopping as soon as the duality test certifies
// non-membership.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fwcuts/oracle.hpp"
#include "fwcuts/vector_ops.hpp"

namespace fwcuts {

enum class StepRule {
  kAgnostic,    // gamma_t = 2 / (t + 2)
  kLineSearch,  // exact minimizer of the quadratic along the direction
};

struct FwConfig {
  int max_iters = 10000;
  double epsilon = 1e-9;  // membership tolerance on f(y) = 1/2 |y - x~|^2
  StepRule step_rule = StepRule::kLineSearch;
  double lazification_factor = 2.0;
  bool lazy = true;
  bool early_termination = true;
  // Stop once a true oracle answer certifies FW gap <= gap_tolerance. With
  // early termination on, this only triggers at points within sqrt(2 eps).
  double gap_tolerance = 1e-9;

  /// Throws ContractViolation on max_iters < 1, epsilon <= 0,
  /// lazification_factor <= 1 or gap_tolerance < 0.
  void validate() const;

  bool operator==(const FwConfig&) const = default;
};

enum class CutSource { kFwConverged, kEarlyStop, kLifted };

/// <alpha, x> <= beta.
struct Cut {
  std::vector<double> alpha;
  double beta = 0.0;
  double violation = 0.0;  // <alpha, x~> - beta at the separated point
  CutSource source = CutSource::kEarlyStop;

  /// Copy scaled so that max |alpha_i| = 1.
  Cut normalized() const;

  bool operator==(const Cut&) const = default;
};

enum class StopReason {
  kEpsilonMembership,
  kEarlyCriterion,
  kZeroGradient,
  kGapTolerance,
  kIterationLimit,
};

std::string_view to_string(StopReason reason);
std::string_view to_string(CutSource source);

struct SeparationStats {
  int iterations = 0;  // completed update steps
  std::int64_t oracle_calls = 0;
  std::int64_t lazy_hits = 0;
  std::int64_t away_steps = 0;
  std::int64_t dual_steps = 0;
  std::int64_t confirmations = 0;  // oracle calls issued to confirm a proxy stop
  double final_f = 0.0;            // f at the iterate where the run stopped
  StopReason stop_reason = StopReason::kIterationLimit;

  bool operator==(const SeparationStats&) const = default;
};

struct Membership {
  double final_f = 0.0;
  bool operator==(const Membership&) const = default;
};

struct Separated {
  Cut cut;
  bool operator==(const Separated&) const = default;
};

/// Budget exhausted without a certificate either way.
struct Undecided {
  double final_f = 0.0;
  bool operator==(const Undecided&) const = default;
};

struct SeparationOutcome {
  std::variant<Membership, Separated, Undecided> result;
  SeparationStats stats;

  bool is_membership() const { return std::holds_alternative<Membership>(result); }
  bool is_separated() const { return std::holds_alternative<Separated>(result); }
  bool is_undecided() const { return std::holds_alternative<Undecided>(result); }
  const Cut& cut() const { return std::get<Separated>(result).cut; }

  bool operator==(const SeparationOutcome&) const = default;
};

/// <y - x~, y - v>: the Frank-Wolfe gap when v is the oracle answer for the
/// gradient y - x~.
double fw_gap(std::span<const double> iterate, std::span<const double> target,
              const Vertex& lmo_vertex);

/// <gradient, y - v> without dimension checks.
double gradient_gap(std::span<const double> gradient,
                    std::span<const double> iterate, const Vertex& v);

struct EarlyStopResult {
  bool fires = false;
  std::optional<Cut> cut;
};

/// Duality test: fires iff <y - x~, y - v> < 1/2 |x~ - y|^2. On firing, the
/// cut alpha = x~ - y, beta = <x~ - y, v> is valid for the polytope and
/// violated at x~ by at least 1/2 |x~ - y|^2, provided `candidate_vertex` is
/// a true oracle minimizer for the gradient at y.
EarlyStopResult early_stop_check(std::span<const double> iterate,
                                 std::span<const double> target,
                                 const Vertex& candidate_vertex);

/// Vanilla Frank-Wolfe with the duality test on every iteration.
SeparationOutcome separate_vanilla(std::span<const double> target,
                                   const LinearOracle& oracle,
                                   const FwConfig& config);

/// Lazy away-step Frank-Wolfe with an explicit active set. The duality test
/// is only allowed to fire on true oracle answers.
SeparationOutcome separate_lazy_afw(std::span<const double> target,
                                    const LinearOracle& oracle,
                                    const FwConfig& config);

/// Worst-case vanilla FW iterations before non-membership is certified,
/// from min_t g_t <= 4 L D^2 / (t + 3) with L = 1.
struct ConvergenceBound {
  double diameter_sq = 0.0;
  double dist_sq = 0.0;
  long long T = 0;
};

/// ceil(8 D^2 / dist^2 - 3), at least 1. Throws UndefinedBoundError for
/// dist_sq == 0 and ContractViolation for non-positive diameter.
long long iteration_bound(double diameter_sq, double dist_sq);
ConvergenceBound make_convergence_bound(double diameter_sq, double dist_sq);

}  // namespace fwcuts
