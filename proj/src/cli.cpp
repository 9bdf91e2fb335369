#include "fwcuts/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

#include <CLI11.hpp>

#include "fwcuts/driver.hpp"
#include "fwcuts/error.hpp"
#include "fwcuts/instance.hpp"
#include "fwcuts/oracle.hpp"
#include "fwcuts/report.hpp"
#include "fwcuts/separator.hpp"

namespace fwcuts {

namespace {

struct Options {
  int max_iters = 10000;
  double epsilon = 1e-9;
  std::string step_rule = "line-search";
  bool no_lazy = false;
  bool vanilla = false;
  int max_rounds = 1000;
  std::string lifting = "down-up";
  int threads = 1;
  bool json = false;
  bool csv = false;
  std::string out_path;
  bool no_timings = false;
  std::string format = "mknap";
  std::string optima_path;
  int repeat = 1;
  bool inject_invalid_cut = false;

  std::string knapsack_path;
  std::string point_path;
  std::string instance_path;

  FwConfig fw() const {
    FwConfig c;
    c.max_iters = max_iters;
    c.epsilon = epsilon;
    c.step_rule = step_rule == "agnostic" ? StepRule::kAgnostic : StepRule::kLineSearch;
    c.lazy = !no_lazy;
    return c;
  }

  LoopConfig loop() const {
    LoopConfig c;
    c.max_rounds = max_rounds;
    c.lifting = *parse_lifting_mode(lifting);
    c.vanilla = vanilla;
    c.threads = threads;
    return c;
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name.resize(dot);
  return name;
}

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

KnapsackSubproblem load_knapsack(const std::string& path) {
  const auto tok = tokens(read_file(path));
  auto integer = [&](std::size_t i, const std::string& what) {
    if (i >= tok.size()) throw ParseError("knapsack file: missing " + what, i);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok[i].size() || tok[i].empty())
      throw ParseError("knapsack file: expected an integer for " + what + ", got '" + tok[i] + "'", i);
    return static_cast<std::int64_t>(v);
  };
  const std::int64_t k = integer(0, "item count");
  if (k < 1) throw ParseError("knapsack file: item count must be positive", 0);
  KnapsackSubproblem sub;
  sub.capacity = integer(1, "capacity");
  for (std::int64_t j = 0; j < k; ++j) {
    sub.weights.push_back(integer(2 + j, "w" + std::to_string(j + 1)));
    sub.index_map.push_back(static_cast<std::size_t>(j));
  }
  if (tok.size() != static_cast<std::size_t>(2 + k))
    throw ParseError("knapsack file: trailing data", static_cast<std::size_t>(2 + k));
  sub.row_weights = sub.weights;
  sub.row_capacity = sub.capacity;
  validate(sub);
  return sub;
}

std::vector<double> load_point(const std::string& path) {
  const auto tok = tokens(read_file(path));
  std::vector<double> point;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    char* end = nullptr;
    const double v = std::strtod(tok[i].c_str(), &end);
    if (end != tok[i].c_str() + tok[i].size() || !std::isfinite(v))
      throw ParseError("point file: expected a real number, got '" + tok[i] + "'", i);
    point.push_back(v);
  }
  if (point.empty()) throw ParseError("point file: empty", 0);
  return point;
}

std::vector<MkpInstance> load_instances(const Options& opt) {
  const std::string text = read_file(opt.instance_path);
  const std::string name = base_name(opt.instance_path);
  std::vector<MkpInstance> instances =
      opt.format == "gap" ? parse_gap(text, name) : parse_mknap(text, name);
  if (!opt.optima_path.empty()) {
    const auto optima = parse_optima(read_file(opt.optima_path));
    if (optima.size() != instances.size())
      throw UsageError("optima file lists " + std::to_string(optima.size()) +
                       " values for " + std::to_string(instances.size()) + " instances");
    for (std::size_t k = 0; k < instances.size(); ++k) instances[k].known_optimum = optima[k];
  }
  return instances;
}

std::string format_double(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Style {
  bool color = false;
  std::string bold(const std::string& s) const { return color ? "\x1b[1m" + s + "\x1b[0m" : s; }
  std::string red(const std::string& s) const { return color ? "\x1b[31m" + s + "\x1b[0m" : s; }
  std::string green(const std::string& s) const { return color ? "\x1b[32m" + s + "\x1b[0m" : s; }
};

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

void write_table(std::ostream& out, const std::vector<RootRunReport>& reports, bool timings,
                 const Style& style) {
  const std::vector<std::string> header = {"instance", "n", "m", "t", "d_lp", "d_r", "p",
                                           "gap%", "time", "sepa", "calls", "cuts", "stop"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports)
    rows.push_back({r.instance, std::to_string(r.n), std::to_string(r.m), format_double(r.tightness, 2),
                    format_double(r.d_lp, 4), format_double(r.d_r, 4),
                    r.p ? std::to_string(*r.p) : "-",
                    r.gap_closed ? format_double(*r.gap_closed, 2) : std::string(to_string(r.gap_status)),
                    timings ? format_double(r.timings.total, 3) : "-",
                    timings ? format_double(r.timings.separation, 3) : "-",
                    std::to_string(r.separation_calls), std::to_string(r.cuts_added), r.termination});
  for (const auto& b : block_averages(reports))
    rows.push_back({b.label(), std::to_string(b.n), std::to_string(b.m), format_double(b.tightness, 2),
                    "", "", "", b.gap_closed ? format_double(*b.gap_closed, 2) : "-",
                    timings ? format_double(b.time, 3) : "-",
                    timings ? format_double(b.sepa_time, 3) : "-", format_double(b.calls, 1),
                    format_double(b.cuts, 1), ""});
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::string line;
  for (std::size_t c = 0; c < header.size(); ++c)
    line += (c ? "  " : "") + (c == 0 || c + 1 == header.size() ? pad(header[c], width[c])
                                                                 : lpad(header[c], width[c]));
  out << style.bold(line) << "\n";
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t c = 0; c < row.size(); ++c)
      line += (c ? "  " : "") +
              (c == 0 || c + 1 == row.size() ? pad(row[c], width[c]) : lpad(row[c], width[c]));
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
}

void write_root_gap(std::ostream& out, const std::vector<RootRunReport>& reports,
                    const Options& opt, const Style& style) {
  const bool timings = !opt.no_timings;
  if (opt.json) {
    out << root_gap_document(reports, opt.fw(), opt.loop(), timings).dump(2) << "\n";
  } else if (opt.csv) {
    out << csv_header() << "\n";
    for (const auto& r : reports) out << csv_row(r, timings) << "\n";
    for (const auto& b : block_averages(reports)) out << csv_row(b, timings) << "\n";
  } else {
    write_table(out, reports, timings, style);
  }
}

// Output goes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_separate(const Options& opt, std::ostream& out, const Style& style) {
  const KnapsackSubproblem sub = load_knapsack(opt.knapsack_path);
  const std::vector<double> point = load_point(opt.point_path);
  if (point.size() != sub.dimension())
    throw UsageError("point has " + std::to_string(point.size()) + " entries, knapsack has " +
                     std::to_string(sub.dimension()) + " items");
  const KnapsackOracle oracle(sub);
  const FwConfig fw = opt.fw();
  const SeparationOutcome outcome =
      opt.vanilla ? separate_vanilla(point, oracle, fw) : separate_lazy_afw(point, oracle, fw);

  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  if (opt.json) {
    os << to_json(outcome).dump(2) << "\n";
  } else {
    const SeparationStats& st = outcome.stats;
    if (outcome.is_separated()) {
      const Cut& cut = outcome.cut();
      os << style.bold("separated") << "\n";
      os << "alpha:";
      for (double a : cut.alpha) os << " " << format_double(a, 9);
      os << "\nbeta: " << format_double(cut.beta, 9) << "\n";
      os << "violation: " << format_double(cut.violation, 9) << "\n";
    } else if (outcome.is_membership()) {
      os << style.bold("membership") << "\n";
    } else {
      os << style.bold("undecided") << "\n";
    }
    os << "iterations: " << st.iterations << "\noracle calls: " << st.oracle_calls
       << "\nstop: " << to_string(st.stop_reason) << "\n";
  }
  if (outcome.is_separated()) return kExitSeparated;
  if (outcome.is_membership()) return kExitMembership;
  return kExitUndecided;
}

int cmd_root_gap(const Options& opt, std::ostream& out, std::ostream& err, const Style& style) {
  const std::vector<MkpInstance> instances = load_instances(opt);
  Sink sink(opt.out_path, out);
  std::vector<RootRunReport> reports;
  for (const auto& inst : instances) {
    try {
      reports.push_back(root_cut_loop(inst, opt.fw(), opt.loop()));
    } catch (const Error& e) {
      write_root_gap(sink.get(), reports, opt, style);
      err << "error: " << inst.name << ": " << e.what() << "\n";
      return kExitError;
    }
  }
  write_root_gap(sink.get(), reports, opt, style);
  return kExitOk;
}

struct Check {
  std::string name;
  std::int64_t count = 0;
  std::int64_t failures = 0;
  std::string first_failure{};

  void record(bool ok, const std::string& where) {
    ++count;
    if (!ok && failures++ == 0) first_failure = where;
  }
};

void corrupt(RootRunReport& report, const MkpInstance& inst) {
  if (!report.cuts.empty()) {
    PoolCut& c = report.cuts.front();
    const auto best = knapsack_dp_max(inst.weights[c.row], inst.capacities[c.row], c.alpha);
    c.beta = best.value - 1.0;
    return;
  }
  PoolCut c;
  c.alpha.assign(inst.n, 0.0);
  c.alpha[0] = 1.0;
  c.beta = -1.0;
  c.violation = 1.0;
  report.cuts.push_back(c);
}

int cmd_audit(const Options& opt, std::ostream& out, std::ostream& err, const Style& style) {
  const std::vector<MkpInstance> instances = load_instances(opt);
  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  if (instances.empty()) {
    err << "warning: no instances in '" << opt.instance_path << "', nothing audited\n";
    os << "audit: 0 instances, 0 checks\n";
    return kExitOk;
  }

  Check validity{"cut-validity"};
  Check violation{"cut-violation"};
  Check monotone{"bound-monotone"};
  Check sandwich{"lp-sandwich"};
  Check determinism{"determinism"};
  Check feasible{"lp-feasible"};
  constexpr double kTol = 1e-6;

  for (std::size_t k = 0; k < instances.size(); ++k) {
    const MkpInstance& inst = instances[k];
    RootRunReport report;
    try {
      report = root_cut_loop(inst, opt.fw(), opt.loop());
      feasible.record(true, inst.name);
    } catch (const InvalidCutError& e) {
      feasible.record(false, inst.name + ": " + e.what());
      continue;
    }
    const RootRunReport again = root_cut_loop(inst, opt.fw(), opt.loop());
    determinism.record(to_json(report, false).dump() == to_json(again, false).dump(), inst.name);
    if (opt.inject_invalid_cut && k == 0 && inst.m > 0 && inst.n > 0) corrupt(report, inst);

    for (std::size_t c = 0; c < report.cuts.size(); ++c) {
      const PoolCut& cut = report.cuts[c];
      const std::string where = inst.name + " cut " + std::to_string(c);
      const auto best = knapsack_dp_max(inst.weights[cut.row], inst.capacities[cut.row], cut.alpha);
      validity.record(best.value <= cut.beta + kTol, where);
      violation.record(cut.violation >= kTol, where);
    }
    const auto& h = report.bound_history;
    for (std::size_t t = 1; t < h.size(); ++t)
      monotone.record(h[t] <= h[t - 1] + kTol, inst.name + " round " + std::to_string(t));
    if (report.p) {
      const double p = static_cast<double>(*report.p);
      for (std::size_t t = 0; t < h.size(); ++t)
        sandwich.record(h[t] >= p - kTol && h[t] <= report.d_lp + kTol,
                        inst.name + " round " + std::to_string(t));
    }
  }

  bool ok = true;
  os << "audit: " << instances.size() << " instances\n";
  for (const Check* c : {&validity, &violation, &monotone, &sandwich, &determinism, &feasible}) {
    const bool pass = c->failures == 0;
    ok = ok && pass;
    os << "  " << pad(c->name, 16) << (pass ? style.green("PASS") : style.red("FAIL")) << "  "
       << c->count << " checks";
    if (!pass) os << ", " << c->failures << " failures (first: " << c->first_failure << ")";
    os << "\n";
  }
  if (!ok) {
    for (const Check* c : {&validity, &violation, &monotone, &sandwich, &determinism, &feasible})
      if (c->failures) err << "failed invariant: " << c->name << "\n";
    return kExitAuditFailed;
  }
  return kExitOk;
}

int cmd_bench(const Options& opt, std::ostream& out, const Style& style) {
  const std::vector<MkpInstance> instances = load_instances(opt);
  std::vector<RootRunReport> reports;
  for (int r = 0; r < opt.repeat; ++r)
    for (const auto& inst : instances) reports.push_back(root_cut_loop(inst, opt.fw(), opt.loop()));

  struct Group {
    BlockSummary summary;
    std::vector<double> time, sepa;
  };
  std::map<std::tuple<std::size_t, std::size_t, long>, std::size_t> index;
  std::vector<Group> groups;
  const auto summaries = block_averages(reports, 1);
  for (const auto& r : reports) {
    const auto key = std::make_tuple(r.n, r.m, std::lround(r.tightness * 100.0));
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({summaries[groups.size()], {}, {}});
    groups[it->second].time.push_back(r.timings.total);
    groups[it->second].sepa.push_back(r.timings.separation);
  }

  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  if (opt.json) {
    Json doc;
    doc["schema"] = kBenchSchema;
    doc["config"] = to_json(opt.fw(), opt.loop());
    doc["repeat"] = opt.repeat;
    Json blocks = Json::array();
    for (const auto& g : groups) {
      Json b = to_json(g.summary, false);
      b["sgm_time"] = round_ms(shifted_geometric_mean(g.time, 1.0));
      b["sgm_sepa_time"] = round_ms(shifted_geometric_mean(g.sepa, 1.0));
      blocks.push_back(b);
    }
    doc["blocks"] = blocks;
    os << doc.dump(2) << "\n";
    return kExitOk;
  }
  os << style.bold("block                      runs   gap%   sgm time   sgm sepa   calls    cuts")
     << "\n";
  for (const auto& g : groups) {
    const auto& s = g.summary;
    os << pad(s.label(), 25) << lpad(std::to_string(s.count), 6) << lpad(s.gap_closed ? format_double(*s.gap_closed, 2) : "-", 7)
       << lpad(format_double(shifted_geometric_mean(g.time, 1.0), 3), 11)
       << lpad(format_double(shifted_geometric_mean(g.sepa, 1.0), 3), 11)
       << lpad(format_double(s.calls, 1), 8) << lpad(format_double(s.cuts, 1), 8) << "\n";
  }
  return kExitOk;
}

void add_fw_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--max-iters", opt.max_iters, "Frank-Wolfe iteration limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", opt.epsilon, "membership tolerance on 1/2 |y - x|^2")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step-rule", opt.step_rule, "line-search or agnostic (2/(t+2))")
      ->capture_default_str()
      ->check(CLI::IsMember({"line-search", "agnostic"}));
  cmd->add_flag("--no-lazy", opt.no_lazy, "call the oracle on every iteration");
  cmd->add_flag("--vanilla", opt.vanilla, "plain Frank-Wolfe without active set");
  cmd->add_option("--out", opt.out_path, "write output to a file");
  cmd->add_flag("--json", opt.json, "JSON output");
}

void add_loop_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("instances", opt.instance_path, "instance file")->required();
  cmd->add_option("--format", opt.format, "mknap or gap")
      ->capture_default_str()
      ->check(CLI::IsMember({"mknap", "gap"}));
  cmd->add_option("--optima", opt.optima_path, "file with one known optimum per instance (0 = unknown)");
  cmd->add_option("--max-rounds", opt.max_rounds, "cutting-plane round limit")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--lifting", opt.lifting, "down-up, down or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"down-up", "down", "none"}));
  cmd->add_option("--threads", opt.threads, "rows separated in parallel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool color_capable) {
  Options opt;
  CLI::App app{"Local cuts for 0/1 knapsack rows by Frank-Wolfe separation", "fwcuts"};
  app.require_subcommand(1);

  auto* separate = app.add_subcommand("separate", "separate a point from a knapsack polytope");
  separate->add_option("knapsack", opt.knapsack_path, "file: k C w1 .. wk")->required();
  separate->add_option("point", opt.point_path, "file: k reals")->required();
  add_fw_flags(separate, opt);

  auto* root_gap = app.add_subcommand("root-gap", "root-node cutting-plane loop and gap closed");
  add_fw_flags(root_gap, opt);
  add_loop_flags(root_gap, opt);
  root_gap->add_flag("--csv", opt.csv, "CSV output");
  root_gap->add_flag("--no-timings", opt.no_timings, "leave timings out of the output");

  auto* audit = app.add_subcommand("audit", "check cut validity and bound invariants");
  add_fw_flags(audit, opt);
  add_loop_flags(audit, opt);
  audit->add_flag("--inject-invalid-cut", opt.inject_invalid_cut)->group("");

  auto* bench = app.add_subcommand("bench", "timing summary per instance block");
  add_fw_flags(bench, opt);
  add_loop_flags(bench, opt);
  bench->add_option("--repeat", opt.repeat, "runs per instance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (opt.json && opt.csv) {
    err << "error: --json and --csv are mutually exclusive\n";
    return kExitError;
  }

  Style style;
  const char* no_color = std::getenv("NO_COLOR");
  style.color = color_capable && !opt.json && !opt.csv && opt.out_path.empty() &&
                (no_color == nullptr || no_color[0] == '\0');

  try {
    if (separate->parsed()) return cmd_separate(opt, out, style);
    if (root_gap->parsed()) return cmd_root_gap(opt, out, err, style);
    if (audit->parsed()) return cmd_audit(opt, out, err, style);
    return cmd_bench(opt, out, style);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace fwcuts
