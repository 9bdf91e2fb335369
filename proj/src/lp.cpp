#include "fwcuts/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fwcuts/error.hpp"

namespace fwcuts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kDriftTol = 1e-5;
constexpr int kRefactorInterval = 50;

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw ContractViolation(std::string("lp: non-finite ") + what);
}

}  // namespace

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

void LpProblem::validate() const {
  require_finite(objective, "objective");
  for (const auto& row : rows) {
    if (row.coeffs.size() != objective.size())
      throw ContractViolation("lp: row dimension does not match the objective");
    require_finite(row.coeffs, "row coefficient");
    if (!std::isfinite(row.rhs)) throw ContractViolation("lp: non-finite rhs");
  }
}

LpSolver::LpSolver(std::vector<double> objective)
    : n_(objective.size()), objective_(std::move(objective)) {
  require_finite(objective_, "objective");
  reset_basis();
}

void LpSolver::add_row(std::span<const double> coeffs, double rhs) {
  if (coeffs.size() != n_)
    throw ContractViolation("lp: row has " + std::to_string(coeffs.size()) +
                            " coefficients, expected " + std::to_string(n_));
  require_finite(coeffs, "row coefficient");
  if (!std::isfinite(rhs)) throw ContractViolation("lp: non-finite rhs");
  rows_.push_back({std::vector<double>(coeffs.begin(), coeffs.end()), rhs});
  basis_.push_back(n_ + rows_.size() - 1);
  status_.push_back(Status::kBasic);
}

double LpSolver::upper(std::size_t j) const { return j < n_ ? 1.0 : kInf; }

double LpSolver::column_entry(std::size_t row, std::size_t j) const {
  if (j < n_) return rows_[row].coeffs[j];
  const std::size_t m = rows_.size();
  if (j < n_ + m) return (j - n_ == row) ? 1.0 : 0.0;
  return artificial_rows_[j - n_ - m] == row ? -1.0 : 0.0;
}

void LpSolver::reset_basis() {
  const std::size_t m = rows_.size();
  status_.assign(n_ + m, Status::kAtLower);
  basis_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    basis_[i] = n_ + i;
    status_[n_ + i] = Status::kBasic;
  }
}

void LpSolver::refactor() {
  const std::size_t m = rows_.size();
  const std::size_t cols = num_columns();
  width_ = cols;

  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> b(m * m);
  std::vector<double> inv(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    inv[i * m + i] = 1.0;
    for (std::size_t k = 0; k < m; ++k) b[i * m + k] = column_entry(i, basis_[k]);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < m; ++i)
      if (std::abs(b[i * m + c]) > std::abs(b[p * m + c])) p = i;
    if (std::abs(b[p * m + c]) < 1e-12)
      throw NumericalInstabilityError("lp: singular basis");
    if (p != c) {
      std::swap_ranges(&b[p * m], &b[p * m] + m, &b[c * m]);
      std::swap_ranges(&inv[p * m], &inv[p * m] + m, &inv[c * m]);
    }
    const double d = b[c * m + c];
    for (std::size_t k = 0; k < m; ++k) {
      b[c * m + k] /= d;
      inv[c * m + k] /= d;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c) continue;
      const double f = b[i * m + c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        b[i * m + k] -= f * b[c * m + k];
        inv[i * m + k] -= f * inv[c * m + k];
      }
    }
  }

  tableau_.assign(m * cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* out = &tableau_[i * cols];
    const double* inv_row = &inv[i * m];
    for (std::size_t k = 0; k < m; ++k) {
      const double f = inv_row[k];
      if (f == 0.0) continue;
      const auto& coeffs = rows_[k].coeffs;
      for (std::size_t j = 0; j < n_; ++j) out[j] += f * coeffs[j];
    }
    for (std::size_t q = 0; q < m; ++q) out[n_ + q] = inv_row[q];
    for (std::size_t a = 0; a < artificial_rows_.size(); ++a)
      out[n_ + m + a] = -inv_row[artificial_rows_[a]];
  }

  std::vector<double> rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    double r = rows_[k].rhs;
    for (std::size_t j = 0; j < n_; ++j)
      if (status_[j] == Status::kAtUpper) r -= rows_[k].coeffs[j];
    rhs[k] = r;
  }
  x_basic_.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) x_basic_[i] += inv[i * m + k] * rhs[k];

  since_refactor_ = 0;
  compute_reduced_costs();
}

void LpSolver::compute_reduced_costs() {
  const std::size_t m = rows_.size();
  const std::size_t cols = width_;
  reduced_.assign(cost_.begin(), cost_.end());
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &tableau_[i * cols];
    for (std::size_t j = 0; j < cols; ++j) reduced_[j] -= cb * row[j];
  }
  for (std::size_t i = 0; i < m; ++i) reduced_[basis_[i]] = 0.0;
}

void LpSolver::pivot(std::size_t r, std::size_t q) {
  const std::size_t m = rows_.size();
  const std::size_t cols = width_;
  double* prow = &tableau_[r * cols];
  const double p = prow[q];
  for (std::size_t j = 0; j < cols; ++j) prow[j] /= p;
  prow[q] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == r) continue;
    double* row = &tableau_[i * cols];
    const double f = row[q];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) row[j] -= f * prow[j];
    row[q] = 0.0;
  }
  const double f = reduced_[q];
  if (f != 0.0)
    for (std::size_t j = 0; j < cols; ++j) reduced_[j] -= f * prow[j];
  reduced_[q] = 0.0;
  ++since_refactor_;
}

LpStatus LpSolver::run_simplex(long& pivots) {
  const std::size_t m = rows_.size();
  const std::size_t cols = width_;
  const long degenerate_limit = 2 * static_cast<long>(m + cols);
  const long iteration_limit = 20000 + 50 * static_cast<long>(m + cols);
  long degenerate_run = 0;
  bool bland = false;

  for (long iter = 0; iter < iteration_limit; ++iter) {
    if (since_refactor_ >= kRefactorInterval) refactor();

    // Pricing: Dantzig, or Bland's smallest index while cycling is suspected.
    std::size_t q = cols;
    double best = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (status_[j] == Status::kBasic) continue;
      double score = 0.0;
      if (status_[j] == Status::kAtLower && reduced_[j] < -kOptTol)
        score = -reduced_[j];
      else if (status_[j] == Status::kAtUpper && reduced_[j] > kOptTol)
        score = reduced_[j];
      else
        continue;
      if (bland) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q == cols) return LpStatus::kOptimal;

    const double dir = status_[q] == Status::kAtLower ? 1.0 : -1.0;
    double theta = upper(q);
    std::size_t leave = m;
    double leave_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = dir * tableau_[i * cols + q];
      double limit;
      if (a > kPivotTol) {
        limit = x_basic_[i] / a;
      } else if (a < -kPivotTol) {
        const double ub = upper(basis_[i]);
        if (ub == kInf) continue;
        limit = (ub - x_basic_[i]) / -a;
      } else {
        continue;
      }
      limit = std::max(limit, 0.0);
      bool take = limit < theta - kDegenerateStep;
      if (!take && leave < m && std::abs(limit - theta) <= kDegenerateStep) {
        take = bland ? basis_[i] < basis_[leave] : std::abs(a) > leave_abs;
      }
      if (take) {
        theta = limit;
        leave = i;
        leave_abs = std::abs(a);
      }
    }
    if (theta == kInf) return LpStatus::kUnbounded;

    for (std::size_t i = 0; i < m; ++i)
      x_basic_[i] -= dir * tableau_[i * cols + q] * theta;

    if (leave == m) {
      status_[q] = status_[q] == Status::kAtLower ? Status::kAtUpper : Status::kAtLower;
    } else {
      const std::size_t out = basis_[leave];
      const double a = dir * tableau_[leave * cols + q];
      const double entering = (status_[q] == Status::kAtLower ? 0.0 : upper(q)) + dir * theta;
      status_[out] = a > 0.0 ? Status::kAtLower : Status::kAtUpper;
      pivot(leave, q);
      basis_[leave] = q;
      status_[q] = Status::kBasic;
      x_basic_[leave] = entering;
      ++pivots;
    }

    if (theta <= kDegenerateStep) {
      if (++degenerate_run > degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
  throw NumericalInstabilityError("lp: simplex iteration limit reached");
}

bool LpSolver::add_artificials() {
  const std::size_t m = rows_.size();
  std::vector<std::size_t> bad;
  bool cold = false;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = basis_[i];
    const double v = x_basic_[i];
    if (v >= -kFeasTol && v <= upper(j) + kFeasTol) continue;
    if (j >= n_ && v < 0.0)
      bad.push_back(i);
    else
      cold = true;
  }
  if (cold) {
    reset_basis();
    refactor();
    bad.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (x_basic_[i] < -kFeasTol) bad.push_back(i);
  }
  if (bad.empty()) return false;

  // Each infeasible basic slack s_q (value < 0) is replaced by an artificial
  // column -e_q carrying the violation.
  for (std::size_t i : bad) {
    const std::size_t slack = basis_[i];
    artificial_rows_.push_back(slack - n_);
    status_[slack] = Status::kAtLower;
    basis_[i] = n_ + m + artificial_rows_.size() - 1;
    status_.push_back(Status::kBasic);
  }
  cost_.assign(num_columns(), 0.0);
  for (std::size_t a = 0; a < artificial_rows_.size(); ++a) cost_[n_ + m + a] = 1.0;
  refactor();
  return true;
}

void LpSolver::remove_artificials() {
  const std::size_t m = rows_.size();
  const std::size_t regular = n_ + m;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis_[i] < regular) continue;
    std::size_t best = regular;
    double best_abs = 1e-9;
    for (std::size_t j = 0; j < regular; ++j) {
      if (status_[j] == Status::kBasic) continue;
      const double a = std::abs(tableau_[i * width_ + j]);
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    if (best == regular)
      throw NumericalInstabilityError("lp: cannot drive an artificial out of the basis");
    const double value = status_[best] == Status::kAtUpper ? upper(best) : 0.0;
    pivot(i, best);
    basis_[i] = best;
    status_[best] = Status::kBasic;
    x_basic_[i] = value;
  }
  artificial_rows_.clear();
  status_.resize(regular);
}

LpSolution LpSolver::extract(LpStatus status, long pivots) const {
  LpSolution sol;
  sol.status = status;
  sol.pivots = pivots;
  if (status != LpStatus::kOptimal) return sol;
  const std::size_t m = rows_.size();
  sol.x.assign(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j)
    if (status_[j] == Status::kAtUpper) sol.x[j] = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis_[i] < n_) sol.x[basis_[i]] = std::clamp(x_basic_[i], 0.0, 1.0);
  sol.objective_value = dot(objective_, sol.x);
  sol.duals.resize(m);
  for (std::size_t q = 0; q < m; ++q) sol.duals[q] = reduced_[n_ + q];
  return sol;
}

bool LpSolver::primal_feasible(const std::vector<double>& x, double tol) const {
  for (const auto& row : rows_)
    if (dot(row.coeffs, x) - row.rhs > tol * (1.0 + std::abs(row.rhs))) return false;
  return true;
}

LpSolution LpSolver::solve_once(long& pivots) {
  const std::size_t m = rows_.size();
  artificial_rows_.clear();
  status_.resize(n_ + m);
  cost_.assign(num_columns(), 0.0);
  refactor();

  if (add_artificials()) {
    run_simplex(pivots);
    double infeasibility = 0.0;
    double scale = 1.0;
    for (const auto& row : rows_) scale = std::max(scale, std::abs(row.rhs));
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] >= n_ + m) infeasibility += x_basic_[i];
    if (infeasibility > 1e-7 * scale) {
      artificial_rows_.clear();
      reset_basis();
      return extract(LpStatus::kInfeasible, pivots);
    }
    remove_artificials();
  }

  cost_.assign(num_columns(), 0.0);
  for (std::size_t j = 0; j < n_; ++j) cost_[j] = -objective_[j];
  refactor();
  const LpStatus status = run_simplex(pivots);
  return extract(status, pivots);
}

LpSolution LpSolver::solve() {
  long pivots = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      LpSolution sol = solve_once(pivots);
      if (sol.status == LpStatus::kOptimal && primal_feasible(sol.x, kDriftTol)) return sol;
      if (sol.status != LpStatus::kOptimal && attempt == 1) return sol;
    } catch (const NumericalInstabilityError&) {
      if (attempt == 1) throw;
    }
    artificial_rows_.clear();
    reset_basis();
  }
  throw NumericalInstabilityError("lp: primal feasibility drifted beyond 1e-5");
}

LpSolution solve(const LpProblem& problem) {
  problem.validate();
  LpSolver solver(problem.objective);
  for (const auto& row : problem.rows) solver.add_row(row.coeffs, row.rhs);
  return solver.solve();
}

MembershipResult membership_test(std::span<const double> point,
                                 const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw ContractViolation("membership test: no vertices");
  const std::size_t k = point.size();
  for (const auto& v : vertices)
    if (v.size() != k) throw ContractViolation("membership test: vertex dimension mismatch");
  require_finite(point, "point");

  // t is scaled into [0, 1] by an upper bound on the L-infinity distance.
  double scale = 1.0;
  for (double p : point) scale = std::max(scale, 1.0 + std::max(std::abs(p), std::abs(1.0 - p)));

  const std::size_t cols = vertices.size() + 1;
  std::vector<double> objective(cols, 0.0);
  objective.back() = -1.0;
  LpSolver solver(std::move(objective));
  std::vector<double> row(cols);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < vertices.size(); ++v) row[v] = vertices[v][i];
    row.back() = -scale;
    solver.add_row(row, point[i]);
    for (std::size_t v = 0; v < vertices.size(); ++v) row[v] = -static_cast<double>(vertices[v][i]);
    solver.add_row(row, -point[i]);
  }
  std::fill(row.begin(), row.end(), 1.0);
  row.back() = 0.0;
  solver.add_row(row, 1.0);
  std::fill(row.begin(), row.end(), -1.0);
  row.back() = 0.0;
  solver.add_row(row, -1.0);

  const LpSolution sol = solver.solve();
  if (sol.status != LpStatus::kOptimal)
    throw InternalConsistencyError("membership test: LP not optimal");
  MembershipResult result;
  result.distance_lb = scale * sol.x.back();
  result.inside = result.distance_lb <= 1e-7;
  return result;
}

namespace {
std::vector<double> unit_cut(std::span<const double> alpha, double beta) {
  std::vector<double> u(alpha.begin(), alpha.end());
  u.push_back(beta);
  const double norm = std::sqrt(squared_norm(u));
  if (norm > 0.0)
    for (double& x : u) x /= norm;
  return u;
}
}  // namespace

bool CutPool::is_duplicate(std::span<const double> alpha, double beta) const {
  const auto u = unit_cut(alpha, beta);
  for (const auto& c : cuts_)
    if (c.size() == u.size() && dot(c, u) > threshold_) return true;
  return false;
}

bool CutPool::add(std::span<const double> alpha, double beta) {
  if (is_duplicate(alpha, beta)) return false;
  cuts_.push_back(unit_cut(alpha, beta));
  return true;
}

}  // namespace fwcuts
