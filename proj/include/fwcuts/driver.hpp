#pragma once

// Root-node cutting-plane loop: LP relaxation, per-row local cuts, re-solve.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwcuts/instance.hpp"
#include "fwcuts/separator.hpp"

namespace fwcuts {

enum class LiftingMode {
  kDownThenUp,
  kDownOnly,
  kNone,  // no lifting: F0 coefficients stay 0, rows with F1 != {} are skipped
};

std::string_view to_string(LiftingMode mode);
std::optional<LiftingMode> parse_lifting_mode(std::string_view text);

struct LoopConfig {
  int max_rounds = 1000;
  bool per_row = true;  // only per-row separation is implemented
  LiftingMode lifting = LiftingMode::kDownThenUp;
  bool vanilla = false;  // plain FW instead of lazy away-step FW
  double min_violation = 1e-6;
  double integrality_tol = 1e-6;
  int threads = 1;

  /// Throws ContractViolation on max_rounds < 0, threads < 1, per_row false
  /// or non-positive tolerances.
  void validate() const;
};

/// Outcome of separating one knapsack row at an LP point.
struct RowSeparation {
  bool called = false;  // false when the row had nothing fractional to separate
  std::optional<SeparationStats> stats;
  bool separated = false;
  bool undecided = false;
  bool skipped_unlifted = false;  // separated, but lifting "none" with F1 != {}
  std::optional<Cut> cut;         // full-space cut with violation at the point
  double separation_seconds = 0.0;
  double lifting_seconds = 0.0;
};

RowSeparation separate_row(std::span<const std::int64_t> row_weights,
                           std::int64_t row_capacity,
                           std::span<const double> lp_point,
                           const FwConfig& fw, const LoopConfig& loop);

struct PoolCut {
  std::size_t row = 0;
  int round = 0;
  std::vector<double> alpha;  // scaled to max |alpha_j| = 1
  double beta = 0.0;
  double violation = 0.0;  // at the LP point of its round, after scaling
};

enum class GapStatus { kDefined, kNoOptimum, kIntegralRoot, kInconsistentOptimum };
std::string_view to_string(GapStatus status);

struct Timings {
  double lp = 0.0;
  double separation = 0.0;
  double lifting = 0.0;
  double total = 0.0;
};

inline constexpr std::size_t kStopReasonCount = 5;

struct RootRunReport {
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  double tightness = 0.0;

  double d_lp = 0.0;
  double d_r = 0.0;
  std::optional<std::int64_t> p;
  std::optional<double> gap_closed;
  GapStatus gap_status = GapStatus::kNoOptimum;
  bool integral_root = false;
  bool integral_final = false;

  int rounds = 0;
  std::int64_t cuts_added = 0;
  std::int64_t separation_calls = 0;
  std::int64_t fw_iterations = 0;
  std::int64_t oracle_calls = 0;
  std::int64_t memberships = 0;
  std::int64_t undecided = 0;
  std::int64_t weak_cuts = 0;  // violation below the acceptance threshold
  std::int64_t duplicates = 0;
  std::int64_t skipped_unlifted = 0;
  std::array<std::int64_t, kStopReasonCount> stop_reasons{};  // by StopReason

  std::string termination;  // "integral", "no-cut" or "max-rounds"
  Timings timings;
  std::vector<double> bound_history;  // d_lp, then the bound after every round
  std::vector<PoolCut> cuts;
};

RootRunReport root_cut_loop(const MkpInstance& instance, const FwConfig& fw,
                            const LoopConfig& loop);

/// 100 - 100 (p - d_r) / (p - d_lp). Throws UndefinedGapError when
/// d_lp == p (within 1e-6) and ContractViolation unless p <= d_r <= d_lp
/// within 1e-6.
double gap_closed(double p, double d_lp, double d_r);

}  // namespace fwcuts
