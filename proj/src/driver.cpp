#include "fwcuts/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "fwcuts/error.hpp"
#include "fwcuts/lifting.hpp"
#include "fwcuts/lp.hpp"
#include "fwcuts/oracle.hpp"

namespace fwcuts {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_integral(std::span<const double> x, double tol) {
  return std::all_of(x.begin(), x.end(),
                     [tol](double v) { return v <= tol || v >= 1.0 - tol; });
}

// Moves forced-zero items with a positive value from F0 into S. None of them
// fits the residual capacity, so the extended subproblem has them at 0 in
// every feasible point and the target is outside its hull.
bool use_forced_items(ReducedRow& reduced, std::span<const double> x, double tol) {
  auto& sub = reduced.sub;
  std::vector<std::size_t> items;
  for (auto j : sub.forced_zero)
    if (x[j] > tol) items.push_back(j);
  if (items.empty()) return false;
  for (auto j : items) {
    sub.index_map.push_back(j);
    sub.weights.push_back(sub.row_weights[j]);
    reduced.target.push_back(x[j]);
    std::erase(sub.fixed_zero, j);
  }
  sub.forced_zero.clear();
  return true;
}

}  // namespace

std::string_view to_string(LiftingMode mode) {
  switch (mode) {
    case LiftingMode::kDownThenUp: return "down-up";
    case LiftingMode::kDownOnly: return "down";
    case LiftingMode::kNone: return "none";
  }
  return "unknown";
}

std::optional<LiftingMode> parse_lifting_mode(std::string_view text) {
  if (text == "down-up") return LiftingMode::kDownThenUp;
  if (text == "down") return LiftingMode::kDownOnly;
  if (text == "none") return LiftingMode::kNone;
  return std::nullopt;
}

std::string_view to_string(GapStatus status) {
  switch (status) {
    case GapStatus::kDefined: return "defined";
    case GapStatus::kNoOptimum: return "no-optimum";
    case GapStatus::kIntegralRoot: return "integral-root";
    case GapStatus::kInconsistentOptimum: return "inconsistent-optimum";
  }
  return "unknown";
}

void LoopConfig::validate() const {
  if (max_rounds < 0) throw ContractViolation("loop config: max_rounds must be >= 0");
  if (threads < 1) throw ContractViolation("loop config: threads must be >= 1");
  if (!per_row) throw ContractViolation("loop config: only per-row separation is supported");
  if (!(min_violation > 0.0)) throw ContractViolation("loop config: min_violation must be > 0");
  if (!(integrality_tol > 0.0 && integrality_tol < 0.5))
    throw ContractViolation("loop config: integrality_tol must lie in (0, 0.5)");
}

RowSeparation separate_row(std::span<const std::int64_t> row_weights,
                           std::int64_t row_capacity, std::span<const double> lp_point,
                           const FwConfig& fw, const LoopConfig& loop) {
  RowSeparation out;
  ReducedRow reduced = reduce_row(row_weights, row_capacity, lp_point, loop.integrality_tol);
  if (reduced.empty() && !use_forced_items(reduced, lp_point, loop.integrality_tol)) return out;

  out.called = true;
  auto start = Clock::now();
  auto separate = [&](const ReducedRow& r) {
    const KnapsackOracle oracle(r.sub);
    return loop.vanilla ? separate_vanilla(r.target, oracle, fw)
                        : separate_lazy_afw(r.target, oracle, fw);
  };
  SeparationOutcome outcome = separate(reduced);
  // S alone can be inside its hull while forced-zero items sit above 0;
  // adding those items back always makes the point separable.
  if (!outcome.is_separated() && use_forced_items(reduced, lp_point, loop.integrality_tol)) {
    const SeparationStats first = outcome.stats;
    outcome = separate(reduced);
    outcome.stats.iterations += first.iterations;
    outcome.stats.oracle_calls += first.oracle_calls;
    outcome.stats.lazy_hits += first.lazy_hits;
    outcome.stats.away_steps += first.away_steps;
    outcome.stats.dual_steps += first.dual_steps;
    outcome.stats.confirmations += first.confirmations;
  }
  out.separation_seconds = seconds_since(start);
  out.stats = outcome.stats;
  out.undecided = outcome.is_undecided();
  if (!outcome.is_separated()) return out;
  out.separated = true;

  start = Clock::now();
  const KnapsackSubproblem& sub = reduced.sub;
  const Cut& reduced_cut = outcome.cut();
  Cut full;
  if (loop.lifting == LiftingMode::kNone) {
    if (!sub.fixed_one.empty()) {
      out.skipped_unlifted = true;
      out.lifting_seconds = seconds_since(start);
      return out;
    }
    full.alpha.assign(row_weights.size(), 0.0);
    for (std::size_t s = 0; s < sub.index_map.size(); ++s)
      full.alpha[sub.index_map[s]] = reduced_cut.alpha[s];
    full.beta = reduced_cut.beta;
    full.source = reduced_cut.source;
  } else {
    const auto policy = loop.lifting == LiftingMode::kDownOnly ? LiftingPolicy::kDownOnly
                                                               : LiftingPolicy::kDownThenUp;
    const LiftedCut lifted = lift_cut(reduced_cut, sub, policy);
    full.alpha = lifted.alpha_full;
    full.beta = lifted.beta_full;
    full.source = CutSource::kLifted;
  }
  full.violation = dot(full.alpha, lp_point) - full.beta;
  out.cut = std::move(full);
  out.lifting_seconds = seconds_since(start);
  return out;
}

double gap_closed(double p, double d_lp, double d_r) {
  if (!std::isfinite(p) || !std::isfinite(d_lp) || !std::isfinite(d_r))
    throw ContractViolation("gap_closed: non-finite bound");
  if (std::abs(d_lp - p) <= 1e-6)
    throw UndefinedGapError("gap_closed: root LP bound equals the optimum");
  if (p > d_r + 1e-6 || d_r > d_lp + 1e-6)
    throw ContractViolation("gap_closed: bounds violate p <= d_r <= d_lp");
  const double value = 100.0 - 100.0 * (p - d_r) / (p - d_lp);
  return std::clamp(value, 0.0, 100.0);
}

RootRunReport root_cut_loop(const MkpInstance& instance, const FwConfig& fw,
                            const LoopConfig& loop) {
  instance.validate();
  fw.validate();
  loop.validate();
  const auto run_start = Clock::now();

  RootRunReport report;
  report.instance = instance.name;
  report.n = instance.n;
  report.m = instance.m;
  report.tightness = instance.tightness();
  report.p = instance.known_optimum;

  const std::size_t n = instance.n;
  LpSolver lp(std::vector<double>(instance.profits.begin(), instance.profits.end()));
  for (std::size_t i = 0; i < instance.m; ++i) {
    const std::vector<double> row(instance.weights[i].begin(), instance.weights[i].end());
    lp.add_row(row, static_cast<double>(instance.capacities[i]));
  }
  for (const auto& group : instance.assignments) {
    std::vector<double> row(n, 0.0);
    for (auto j : group) row[j] = 1.0;
    lp.add_row(row, 1.0);
    for (auto j : group) row[j] = -1.0;
    lp.add_row(row, -1.0);
  }

  auto lp_start = Clock::now();
  LpSolution sol = lp.solve();
  report.timings.lp += seconds_since(lp_start);
  if (sol.status != LpStatus::kOptimal)
    throw InfeasibleError("root LP relaxation of " + instance.name + " is " +
                          std::string(to_string(sol.status)));
  report.d_lp = sol.objective_value;
  report.d_r = sol.objective_value;
  report.bound_history.push_back(sol.objective_value);
  report.integral_root = is_integral(sol.x, loop.integrality_tol);

  CutPool pool;
  std::vector<RowSeparation> results(instance.m);
  while (true) {
    if (is_integral(sol.x, loop.integrality_tol)) {
      report.termination = "integral";
      break;
    }
    if (report.rounds >= loop.max_rounds) {
      report.termination = "max-rounds";
      break;
    }
    ++report.rounds;

    // Rows are independent given the LP point; results are collected per row
    // so the outcome does not depend on the thread count.
    std::vector<std::exception_ptr> errors(instance.m);
    auto work = [&](std::size_t i) {
      try {
        results[i] = separate_row(instance.weights[i], instance.capacities[i], sol.x, fw, loop);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    };
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(loop.threads), instance.m);
    if (workers <= 1) {
      for (std::size_t i = 0; i < instance.m; ++i) work(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool_threads;
      for (std::size_t t = 0; t < workers; ++t)
        pool_threads.emplace_back([&] {
          for (std::size_t i = next++; i < instance.m; i = next++) work(i);
        });
      for (auto& th : pool_threads) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    int added = 0;
    for (std::size_t i = 0; i < instance.m; ++i) {
      const RowSeparation& r = results[i];
      report.timings.separation += r.separation_seconds;
      report.timings.lifting += r.lifting_seconds;
      if (!r.called) continue;
      ++report.separation_calls;
      const SeparationStats& st = *r.stats;
      report.fw_iterations += st.iterations;
      report.oracle_calls += st.oracle_calls;
      ++report.stop_reasons[static_cast<std::size_t>(st.stop_reason)];
      if (!r.separated) {
        if (r.undecided)
          ++report.undecided;
        else
          ++report.memberships;
        continue;
      }
      if (r.skipped_unlifted) {
        ++report.skipped_unlifted;
        continue;
      }
      const Cut cut = r.cut->normalized();
      if (!(cut.violation >= loop.min_violation)) {
        ++report.weak_cuts;
        continue;
      }
      if (!pool.add(cut.alpha, cut.beta)) {
        ++report.duplicates;
        continue;
      }
      lp.add_row(cut.alpha, cut.beta);
      report.cuts.push_back({i, report.rounds, cut.alpha, cut.beta, cut.violation});
      ++added;
    }
    report.cuts_added += added;
    if (added == 0) {
      report.termination = "no-cut";
      break;
    }

    lp_start = Clock::now();
    sol = lp.solve();
    report.timings.lp += seconds_since(lp_start);
    if (sol.status != LpStatus::kOptimal)
      throw InvalidCutError("LP of " + instance.name + " became " +
                            std::string(to_string(sol.status)) + " after round " +
                            std::to_string(report.rounds));
    report.d_r = sol.objective_value;
    report.bound_history.push_back(sol.objective_value);
  }
  report.integral_final = is_integral(sol.x, loop.integrality_tol);

  if (!report.p) {
    report.gap_status = GapStatus::kNoOptimum;
  } else {
    try {
      report.gap_closed = gap_closed(static_cast<double>(*report.p), report.d_lp, report.d_r);
      report.gap_status = GapStatus::kDefined;
    } catch (const UndefinedGapError&) {
      report.gap_status = GapStatus::kIntegralRoot;
    } catch (const ContractViolation&) {
      report.gap_status = GapStatus::kInconsistentOptimum;
    }
  }
  report.timings.total = seconds_since(run_start);
  return report;
}

}  // namespace fwcuts
