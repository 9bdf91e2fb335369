#include "fwcuts/active_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fwcuts/error.hpp"

namespace fwcuts {

namespace {
constexpr double kDropWeight = 1e-12;
}

ActiveSet::ActiveSet(std::size_t dimension)
    : dimension_(dimension), iterate_(dimension, 0.0) {}

void ActiveSet::reset(const Vertex& v) {
  if (v.size() != dimension_)
    throw ContractViolation("active set: vertex has wrong dimension");
  entries_.clear();
  entries_.push_back({1.0, v});
  prune_and_refresh();
}

std::size_t ActiveSet::find(const Vertex& v) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].vertex == v) return i;
  return entries_.size();
}

std::size_t ActiveSet::argmin(std::span<const double> direction) const {
  std::size_t best = 0;
  double best_value = dot(direction, entries_[0].vertex);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    const double value = dot(direction, entries_[i].vertex);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

std::size_t ActiveSet::argmax(std::span<const double> direction) const {
  std::size_t best = 0;
  double best_value = dot(direction, entries_[0].vertex);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    const double value = dot(direction, entries_[i].vertex);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

void ActiveSet::move_towards(const Vertex& v, double gamma) {
  if (gamma <= 0.0) return;
  if (gamma >= 1.0) {
    reset(v);
    return;
  }
  for (auto& e : entries_) e.weight *= (1.0 - gamma);
  const std::size_t i = find(v);
  if (i < entries_.size())
    entries_[i].weight += gamma;
  else
    entries_.push_back({gamma, v});
  prune_and_refresh();
}

void ActiveSet::move_away(std::size_t away_index, double gamma) {
  if (gamma <= 0.0) return;
  for (auto& e : entries_) e.weight *= (1.0 + gamma);
  entries_[away_index].weight -= gamma;
  prune_and_refresh();
}

void ActiveSet::check(double tolerance) const {
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.weight > 0.0) || e.weight > 1.0 + tolerance)
      throw InternalConsistencyError("active set: weight outside (0, 1]");
    total += e.weight;
  }
  if (std::abs(total - 1.0) > tolerance)
    throw InternalConsistencyError("active set: weights sum to " +
                                   std::to_string(total));
}

void ActiveSet::prune_and_refresh() {
  std::erase_if(entries_, [](const Entry& e) { return e.weight < kDropWeight; });
  double total = 0.0;
  for (const auto& e : entries_) total += e.weight;
  if (entries_.empty() || std::abs(total - 1.0) > 1e-6)
    throw InternalConsistencyError("active set: weight drift, sum = " +
                                   std::to_string(total));
  for (auto& e : entries_) e.weight /= total;

  std::fill(iterate_.begin(), iterate_.end(), 0.0);
  for (const auto& e : entries_)
    for (std::size_t i = 0; i < dimension_; ++i)
      if (e.vertex[i]) iterate_[i] += e.weight;
}

}  // namespace fwcuts
