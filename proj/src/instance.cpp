#include "fwcuts/instance.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "fwcuts/error.hpp"

namespace fwcuts {

namespace {

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : text_(text) {}

  std::int64_t next(const std::string& field) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == text_.size())
      throw ParseError("unexpected end of input while reading " + field + " (token " +
                           std::to_string(index_) + ")",
                       index_);
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string_view token = text_.substr(pos_, end - pos_);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw ParseError("expected an integer for " + field + " at token " +
                           std::to_string(index_) + ", got '" + std::string(token) + "'",
                       index_);
    pos_ = end;
    ++index_;
    return value;
  }

  std::size_t count(const std::string& field) {
    const std::size_t at = index_;
    const std::int64_t v = next(field);
    if (v < 0)
      throw ParseError(field + " must be non-negative at token " + std::to_string(at), at);
    return static_cast<std::size_t>(v);
  }

  std::size_t last() const { return index_ - 1; }

  void expect_end() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ != text_.size())
      throw ParseError("trailing data at token " + std::to_string(index_), index_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t index_ = 0;
};

std::string field(const char* name, std::size_t k, std::size_t i) {
  return "instance " + std::to_string(k + 1) + " " + name + "[" + std::to_string(i + 1) + "]";
}

std::string field(const char* name, std::size_t k, std::size_t i, std::size_t j) {
  return "instance " + std::to_string(k + 1) + " " + name + "[" + std::to_string(i + 1) + "][" +
         std::to_string(j + 1) + "]";
}

std::string instance_name(std::string_view base, std::size_t k) {
  return std::string(base) + "#" + std::to_string(k + 1);
}

}  // namespace

void MkpInstance::validate() const {
  if (profits.size() != n || weights.size() != m || capacities.size() != m)
    throw ContractViolation("instance " + name + ": inconsistent dimensions");
  for (const auto& row : weights) {
    if (row.size() != n) throw ContractViolation("instance " + name + ": ragged weight matrix");
    for (auto a : row)
      if (a < 0) throw ContractViolation("instance " + name + ": negative weight");
  }
  for (auto b : capacities)
    if (b < 0) throw ContractViolation("instance " + name + ": negative capacity");
  for (const auto& group : assignments)
    for (auto j : group)
      if (j >= n) throw ContractViolation("instance " + name + ": assignment index out of range");
}

double MkpInstance::tightness() const {
  if (m == 0) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t total = 0;
    for (auto a : weights[i]) total += a;
    sum += total > 0 ? static_cast<double>(capacities[i]) / static_cast<double>(total) : 1.0;
  }
  return sum / static_cast<double>(m);
}

std::vector<MkpInstance> parse_mknap(std::string_view text, std::string_view base_name) {
  TokenStream in(text);
  const std::size_t count = in.count("instance count K");
  std::vector<MkpInstance> out;
  for (std::size_t k = 0; k < count; ++k) {
    MkpInstance inst;
    inst.name = instance_name(base_name, k);
    const std::string prefix = "instance " + std::to_string(k + 1) + " ";
    inst.n = in.count(prefix + "n");
    inst.m = in.count(prefix + "m");
    const std::int64_t opt = in.next(prefix + "optimum");
    if (opt != 0) inst.known_optimum = opt;
    inst.profits.resize(inst.n);
    for (std::size_t j = 0; j < inst.n; ++j) inst.profits[j] = in.next(field("c", k, j));
    inst.weights.assign(inst.m, std::vector<std::int64_t>(inst.n));
    for (std::size_t i = 0; i < inst.m; ++i)
      for (std::size_t j = 0; j < inst.n; ++j) {
        const std::string f = field("A", k, i, j);
        inst.weights[i][j] = in.next(f);
        if (inst.weights[i][j] < 0) throw ParseError(f + " is negative", in.last());
      }
    inst.capacities.resize(inst.m);
    for (std::size_t i = 0; i < inst.m; ++i) {
      const std::string f = field("b", k, i);
      inst.capacities[i] = in.next(f);
      if (inst.capacities[i] < 0) throw ParseError(f + " is negative", in.last());
    }
    out.push_back(std::move(inst));
  }
  in.expect_end();
  return out;
}

std::vector<MkpInstance> parse_gap(std::string_view text, std::string_view base_name) {
  TokenStream in(text);
  const std::size_t count = in.count("instance count K");
  std::vector<MkpInstance> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::string prefix = "instance " + std::to_string(k + 1) + " ";
    const std::size_t agents = in.count(prefix + "m");
    const std::size_t jobs = in.count(prefix + "n");
    MkpInstance inst;
    inst.name = instance_name(base_name, k);
    inst.n = agents * jobs;
    inst.m = agents;
    inst.profits.resize(inst.n);
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t j = 0; j < jobs; ++j) inst.profits[i * jobs + j] = in.next(field("cost", k, i, j));
    inst.weights.assign(agents, std::vector<std::int64_t>(inst.n, 0));
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t j = 0; j < jobs; ++j) {
        const std::string f = field("resource", k, i, j);
        const std::int64_t r = in.next(f);
        if (r < 0) throw ParseError(f + " is negative", in.last());
        inst.weights[i][i * jobs + j] = r;
      }
    inst.capacities.resize(agents);
    for (std::size_t i = 0; i < agents; ++i) {
      const std::string f = field("capacity", k, i);
      inst.capacities[i] = in.next(f);
      if (inst.capacities[i] < 0) throw ParseError(f + " is negative", in.last());
    }
    inst.assignments.resize(jobs);
    for (std::size_t j = 0; j < jobs; ++j)
      for (std::size_t i = 0; i < agents; ++i) inst.assignments[j].push_back(i * jobs + j);
    out.push_back(std::move(inst));
  }
  in.expect_end();
  return out;
}

std::vector<std::optional<std::int64_t>> parse_optima(std::string_view text) {
  std::vector<std::optional<std::int64_t>> out;
  std::size_t pos = 0;
  std::size_t index = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
    if (ec != std::errc() || ptr != text.data() + end)
      throw ParseError("expected an integer optimum at token " + std::to_string(index), index);
    out.push_back(v == 0 ? std::nullopt : std::optional<std::int64_t>(v));
    pos = end;
    ++index;
  }
  return out;
}

std::string format_mknap(const std::vector<MkpInstance>& instances) {
  std::ostringstream os;
  os << instances.size() << "\n";
  for (const auto& inst : instances) {
    os << inst.n << " " << inst.m << " " << inst.known_optimum.value_or(0) << "\n";
    for (std::size_t j = 0; j < inst.n; ++j) os << inst.profits[j] << (j + 1 < inst.n ? " " : "\n");
    for (const auto& row : inst.weights)
      for (std::size_t j = 0; j < inst.n; ++j) os << row[j] << (j + 1 < inst.n ? " " : "\n");
    for (std::size_t i = 0; i < inst.m; ++i)
      os << inst.capacities[i] << (i + 1 < inst.m ? " " : "\n");
  }
  return os.str();
}

}  // namespace fwcuts
