#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fwcuts {

/// A 0/1 point returned by an oracle.
using Vertex = std::vector<std::uint8_t>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(std::span<const double> a, const Vertex& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (v[i]) s += a[i];
  return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline std::vector<double> to_real(const Vertex& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace fwcuts
