#pragma once

// Multidimensional knapsack and generalized assignment instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fwcuts {

/// max <c, x> s.t. A x <= b, x in {0,1}^n, plus optional assignment groups
/// whose variables must sum to exactly one (GAP instances).
struct MkpInstance {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;  // knapsack rows
  std::vector<std::int64_t> profits;
  std::vector<std::vector<std::int64_t>> weights;  // m x n
  std::vector<std::int64_t> capacities;
  std::optional<std::int64_t> known_optimum;
  std::vector<std::vector<std::size_t>> assignments;

  /// Throws ContractViolation on inconsistent dimensions or negative data.
  void validate() const;

  /// Mean over rows of b_i / sum_j a_ij (1 for rows with no weight).
  double tightness() const;
};

/// `K`, then per instance `n m opt`, `c[1..n]`, `A` row-major, `b[1..m]`.
/// An optimum of 0 marks it as unknown. Instances are named
/// "<base_name>#<index>" (1-based).
std::vector<MkpInstance> parse_mknap(std::string_view text,
                                     std::string_view base_name = "mknap");

/// `K`, then per instance `m n`, costs m x n, resources m x n, capacities m.
/// Variable x_ij has index i * n + j and each job j gets one assignment
/// group {x_0j, ..., x_(m-1)j}. Costs are maximized.
std::vector<MkpInstance> parse_gap(std::string_view text,
                                   std::string_view base_name = "gap");

/// One integer per instance; 0 marks an unknown optimum.
std::vector<std::optional<std::int64_t>> parse_optima(std::string_view text);

/// Writes the mknap layout for `instances` (unknown optima as 0).
std::string format_mknap(const std::vector<MkpInstance>& instances);

}  // namespace fwcuts
