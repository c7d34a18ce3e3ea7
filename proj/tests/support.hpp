#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "mllt/error.hpp"

namespace testing {

// Code of the mllt::Error thrown by fn, or nullopt if nothing was thrown.
template <class Fn>
std::optional<mllt::ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const mllt::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Random probability vector of length d with every category (remainder
// included) at least `floor`.
inline std::vector<double> random_p(std::mt19937_64& rng, int d, double floor) {
  std::gamma_distribution<double> g(1.0, 1.0);
  for (;;) {
    std::vector<double> w(static_cast<std::size_t>(d) + 1);
    double s = 0;
    for (auto& v : w) s += (v = g(rng));
    std::vector<double> p;
    double used = 0, min = 1;
    for (int i = 0; i < d; ++i) {
      p.push_back(w[static_cast<std::size_t>(i)] / s);
      used += p.back();
      min = std::min(min, p.back());
    }
    min = std::min(min, 1.0 - used);
    if (min >= floor) return p;
  }
}

inline double rel_diff(double a, double b) {
  const double m = std::max(std::fabs(a), std::fabs(b));
  return m == 0 ? 0 : std::fabs(a - b) / m;
}

}  // namespace testing
