#include "fwcuts/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "fwcuts/error.hpp"

namespace fwcuts {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

Json sparse(std::span<const double> alpha) {
  Json out = Json::array();
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j] != 0.0) out.push_back(Json::array({j, alpha[j]}));
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

Json to_json(const SeparationStats& stats) {
  Json j;
  j["iterations"] = stats.iterations;
  j["oracle_calls"] = stats.oracle_calls;
  j["lazy_hits"] = stats.lazy_hits;
  j["away_steps"] = stats.away_steps;
  j["dual_steps"] = stats.dual_steps;
  j["confirmations"] = stats.confirmations;
  j["final_f"] = stats.final_f;
  j["stop_reason"] = std::string(to_string(stats.stop_reason));
  return j;
}

Json to_json(const SeparationOutcome& outcome) {
  Json j;
  j["schema"] = kSeparationSchema;
  if (outcome.is_separated()) {
    const Cut& cut = outcome.cut();
    j["result"] = "separated";
    j["cut"] = {{"alpha", cut.alpha},
                {"beta", cut.beta},
                {"violation", cut.violation},
                {"source", std::string(to_string(cut.source))}};
  } else if (outcome.is_membership()) {
    j["result"] = "membership";
  } else {
    j["result"] = "undecided";
  }
  j["stats"] = to_json(outcome.stats);
  return j;
}

Json to_json(const FwConfig& fw, const LoopConfig& loop) {
  Json j;
  j["max_iters"] = fw.max_iters;
  j["epsilon"] = fw.epsilon;
  j["step_rule"] = fw.step_rule == StepRule::kLineSearch ? "line-search" : "agnostic";
  j["lazy"] = fw.lazy;
  j["vanilla"] = loop.vanilla;
  j["max_rounds"] = loop.max_rounds;
  j["lifting"] = std::string(to_string(loop.lifting));
  j["min_violation"] = loop.min_violation;
  return j;
}

Json to_json(const RootRunReport& r, bool timings) {
  Json j;
  j["name"] = r.instance;
  j["n"] = r.n;
  j["m"] = r.m;
  j["tightness"] = r.tightness;
  j["d_lp"] = r.d_lp;
  j["d_r"] = r.d_r;
  j["p"] = r.p ? Json(*r.p) : Json(nullptr);
  j["gap_closed"] = optional_number(r.gap_closed);
  j["gap_status"] = std::string(to_string(r.gap_status));
  j["integral_root"] = r.integral_root;
  j["integral_final"] = r.integral_final;
  j["termination"] = r.termination;
  j["rounds"] = r.rounds;
  j["cuts_added"] = r.cuts_added;
  j["separation_calls"] = r.separation_calls;
  j["fw_iterations"] = r.fw_iterations;
  j["oracle_calls"] = r.oracle_calls;
  j["memberships"] = r.memberships;
  j["undecided"] = r.undecided;
  j["weak_cuts"] = r.weak_cuts;
  j["duplicates"] = r.duplicates;
  j["skipped_unlifted"] = r.skipped_unlifted;
  Json stops;
  for (std::size_t k = 0; k < kStopReasonCount; ++k)
    stops[std::string(to_string(static_cast<StopReason>(k)))] = r.stop_reasons[k];
  j["stop_reasons"] = stops;
  if (timings)
    j["timings"] = {{"lp", round_ms(r.timings.lp)},
                    {"separation", round_ms(r.timings.separation)},
                    {"lifting", round_ms(r.timings.lifting)},
                    {"total", round_ms(r.timings.total)}};
  j["bound_history"] = r.bound_history;
  Json cuts = Json::array();
  for (const auto& c : r.cuts)
    cuts.push_back({{"row", c.row},
                    {"round", c.round},
                    {"alpha", sparse(c.alpha)},
                    {"beta", c.beta},
                    {"violation", c.violation}});
  j["cuts"] = cuts;
  return j;
}

std::string BlockSummary::label() const {
  return "avg(n=" + std::to_string(n) + " m=" + std::to_string(m) + " t=" + fixed(tightness, 2) +
         ")";
}

std::vector<BlockSummary> block_averages(const std::vector<RootRunReport>& reports,
                                         std::size_t min_count) {
  using Key = std::tuple<std::size_t, std::size_t, long>;
  std::map<Key, std::size_t> index;
  std::vector<BlockSummary> blocks;
  for (const auto& r : reports) {
    const long t = std::lround(r.tightness * 100.0);
    const Key key{r.n, r.m, t};
    auto [it, inserted] = index.emplace(key, blocks.size());
    if (inserted) {
      BlockSummary b;
      b.n = r.n;
      b.m = r.m;
      b.tightness = static_cast<double>(t) / 100.0;
      blocks.push_back(b);
    }
    BlockSummary& b = blocks[it->second];
    ++b.count;
    if (r.gap_closed) {
      b.gap_closed = b.gap_closed.value_or(0.0) + *r.gap_closed;
      ++b.gap_count;
    }
    b.time += r.timings.total;
    b.sepa_time += r.timings.separation;
    b.calls += static_cast<double>(r.separation_calls);
    b.cuts += static_cast<double>(r.cuts_added);
  }
  std::vector<BlockSummary> out;
  for (auto& b : blocks) {
    if (b.count < min_count) continue;
    const double c = static_cast<double>(b.count);
    if (b.gap_closed) *b.gap_closed /= static_cast<double>(b.gap_count);
    b.time /= c;
    b.sepa_time /= c;
    b.calls /= c;
    b.cuts /= c;
    out.push_back(b);
  }
  return out;
}

Json to_json(const BlockSummary& b, bool timings) {
  Json j;
  j["label"] = b.label();
  j["n"] = b.n;
  j["m"] = b.m;
  j["tightness"] = b.tightness;
  j["count"] = b.count;
  j["gap_count"] = b.gap_count;
  j["gap_closed"] = optional_number(b.gap_closed);
  if (timings) {
    j["time"] = round_ms(b.time);
    j["sepa_time"] = round_ms(b.sepa_time);
  }
  j["calls"] = b.calls;
  j["cuts"] = b.cuts;
  return j;
}

Json root_gap_document(const std::vector<RootRunReport>& reports, const FwConfig& fw,
                       const LoopConfig& loop, bool timings) {
  Json doc;
  doc["schema"] = kRootGapSchema;
  doc["config"] = to_json(fw, loop);
  Json instances = Json::array();
  for (const auto& r : reports) instances.push_back(to_json(r, timings));
  doc["instances"] = instances;
  Json blocks = Json::array();
  for (const auto& b : block_averages(reports)) blocks.push_back(to_json(b, timings));
  doc["blocks"] = blocks;
  return doc;
}

std::string csv_header() {
  return "instance,n,m,tightness,d_lp,d_r,p,gap_closed,time,sepa_time,calls,cuts";
}

std::string csv_row(const RootRunReport& r, bool timings) {
  std::string row = r.instance + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                    fixed(r.tightness, 2) + "," + fixed(r.d_lp, 6) + "," + fixed(r.d_r, 6) + ",";
  row += r.p ? std::to_string(*r.p) : "";
  row += ",";
  row += r.gap_closed ? fixed(*r.gap_closed, 2) : "";
  row += ",";
  if (timings) row += fixed(r.timings.total, 3) + "," + fixed(r.timings.separation, 3);
  else row += ",";
  row += "," + std::to_string(r.separation_calls) + "," + std::to_string(r.cuts_added);
  return row;
}

std::string csv_row(const BlockSummary& b, bool timings) {
  std::string row = b.label() + "," + std::to_string(b.n) + "," + std::to_string(b.m) + "," +
                    fixed(b.tightness, 2) + ",,,,";
  row += b.gap_closed ? fixed(*b.gap_closed, 2) : "";
  row += ",";
  if (timings) row += fixed(b.time, 3) + "," + fixed(b.sepa_time, 3);
  else row += ",";
  row += "," + fixed(b.calls, 1) + "," + fixed(b.cuts, 1);
  return row;
}

double shifted_geometric_mean(std::span<const double> values, double shift) {
  if (values.empty()) throw ContractViolation("shifted geometric mean of an empty list");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v + shift > 0.0))
      throw ContractViolation("shifted geometric mean: value + shift must be positive");
    log_sum += std::log(v + shift);
  }
  return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

}  // namespace fwcuts
