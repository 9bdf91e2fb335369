#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fwcuts/vector_ops.hpp"

namespace fwcuts {

/// Explicit convex combination of oracle vertices; the cached iterate is
/// recomputed from the weights after every update.
class ActiveSet {
 public:
  struct Entry {
    double weight;
    Vertex vertex;

    bool operator==(const Entry&) const = default;
  };

  explicit ActiveSet(std::size_t dimension);

  /// Replaces the set by the single vertex `v` with weight 1.
  void reset(const Vertex& v);

  std::size_t size() const { return entries_.size(); }
  std::size_t dimension() const { return dimension_; }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::span<const double> iterate() const { return iterate_; }

  /// Index of `v`, or size() when absent.
  std::size_t find(const Vertex& v) const;

  /// Entry minimizing / maximizing <direction, v>; the lowest index wins ties.
  std::size_t argmin(std::span<const double> direction) const;
  std::size_t argmax(std::span<const double> direction) const;

  /// y <- (1 - gamma) y + gamma v.
  void move_towards(const Vertex& v, double gamma);

  /// y <- (1 + gamma) y - gamma v_A, with v_A = entry(away_index).
  void move_away(std::size_t away_index, double gamma);

  /// Throws InternalConsistencyError if the weights drift from the simplex
  /// by more than `tolerance`.
  void check(double tolerance) const;

 private:
  void prune_and_refresh();

  std::size_t dimension_;
  std::vector<Entry> entries_;
  std::vector<double> iterate_;
};

}  // namespace fwcuts
