#pragma once

// Serialization of separation outcomes and root-node reports.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwcuts/driver.hpp"
#include "fwcuts/separator.hpp"

namespace fwcuts {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSeparationSchema = "fwcuts/separation/v1";
inline constexpr const char* kRootGapSchema = "fwcuts/root-gap/v1";
inline constexpr const char* kBenchSchema = "fwcuts/bench/v1";

Json to_json(const SeparationStats& stats);
Json to_json(const SeparationOutcome& outcome);
Json to_json(const FwConfig& fw, const LoopConfig& loop);

/// Per-phase timings are left out when `timings` is false, which makes the
/// output a pure function of instance and configuration.
Json to_json(const RootRunReport& report, bool timings);

/// Average over the instances sharing (n, m, tightness rounded to 0.01).
struct BlockSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  double tightness = 0.0;
  std::size_t count = 0;
  std::size_t gap_count = 0;  // instances with a defined gap_closed
  std::optional<double> gap_closed;
  double time = 0.0;
  double sepa_time = 0.0;
  double calls = 0.0;
  double cuts = 0.0;

  std::string label() const;
};

/// Blocks in order of first appearance; groups smaller than `min_count`
/// are left out.
std::vector<BlockSummary> block_averages(const std::vector<RootRunReport>& reports,
                                         std::size_t min_count = 2);

Json to_json(const BlockSummary& block, bool timings);

Json root_gap_document(const std::vector<RootRunReport>& reports, const FwConfig& fw,
                       const LoopConfig& loop, bool timings);

std::string csv_header();
std::string csv_row(const RootRunReport& report, bool timings);
std::string csv_row(const BlockSummary& block, bool timings);

/// (prod (t_i + s))^(1/r) - s, computed in log space. Throws
/// ContractViolation on an empty input or t_i + s <= 0.
double shifted_geometric_mean(std::span<const double> values, double shift = 1.0);

/// Rounds to 1 ms.
double round_ms(double seconds);

}  // namespace fwcuts
