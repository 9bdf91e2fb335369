#pragma once

// Dense bounded-variable primal simplex for max {<c, x> : Ax <= b, 0 <= x <= 1}.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fwcuts/vector_ops.hpp"

namespace fwcuts {

struct LpRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

/// Maximization; every variable is bounded to [0, 1] and every row is <=.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> rows;

  /// Throws ContractViolation on non-finite data or ragged rows.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  std::vector<double> duals;  // row multipliers, >= 0 at an optimum
  long pivots = 0;
};

/// Stateful solver: rows can be appended between solves and the previous
/// basis is reused, so a cut round only has to repair the new rows.
class LpSolver {
 public:
  explicit LpSolver(std::vector<double> objective);

  std::size_t num_cols() const { return n_; }
  std::size_t num_rows() const { return rows_.size(); }

  void add_row(std::span<const double> coeffs, double rhs);
  const LpRow& row(std::size_t i) const { return rows_[i]; }

  LpSolution solve();

 private:
  enum class Status : unsigned char { kBasic, kAtLower, kAtUpper };

  std::size_t num_columns() const { return n_ + rows_.size() + artificial_rows_.size(); }
  double upper(std::size_t j) const;
  bool is_artificial(std::size_t j) const { return j >= n_ + rows_.size(); }
  double column_entry(std::size_t row, std::size_t j) const;

  void reset_basis();
  void refactor();
  void compute_reduced_costs();
  void pivot(std::size_t r, std::size_t q);
  LpStatus run_simplex(long& pivots);
  bool add_artificials();
  void remove_artificials();
  LpSolution extract(LpStatus status, long pivots) const;
  bool primal_feasible(const std::vector<double>& x, double tol) const;
  LpSolution solve_once(long& pivots);

  std::size_t n_;
  std::vector<double> objective_;
  std::vector<LpRow> rows_;

  // Basis state survives between solves.
  std::vector<std::size_t> basis_;
  std::vector<Status> status_;

  // Working state of the current solve.
  std::vector<std::size_t> artificial_rows_;
  std::vector<double> cost_;
  std::vector<double> tableau_;  // row-major, rows_.size() x num_columns()
  std::vector<double> x_basic_;
  std::vector<double> reduced_;
  std::size_t width_ = 0;
  int since_refactor_ = 0;
};

LpSolution solve(const LpProblem& problem);

struct MembershipResult {
  bool inside = false;
  double distance_lb = 0.0;  // L-infinity distance to the hull, <= Euclidean
};

/// Decides whether `point` lies in conv(vertices) by the LP
/// min t s.t. |point - sum lambda_v v|_inf <= t, sum lambda = 1, lambda >= 0.
/// inside iff t* <= 1e-7.
MembershipResult membership_test(std::span<const double> point,
                                 const std::vector<Vertex>& vertices);

/// Rejects cuts whose (alpha, beta) is nearly parallel to a stored one.
class CutPool {
 public:
  explicit CutPool(double cosine_threshold = 1.0 - 1e-9)
      : threshold_(cosine_threshold) {}

  /// Returns false (and stores nothing) for a duplicate.
  bool add(std::span<const double> alpha, double beta);
  bool is_duplicate(std::span<const double> alpha, double beta) const;
  std::size_t size() const { return cuts_.size(); }

 private:
  double threshold_;
  std::vector<std::vector<double>> cuts_;  // unit-norm (alpha, beta)
};

}  // namespace fwcuts
