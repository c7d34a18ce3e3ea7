#pragma once

// Property checks used by both the unit suite and the acceptance runner.

#include <array>
#include <cmath>
#include <vector>

#include "mllt/exact.hpp"
#include "mllt/moments.hpp"
#include "oracles.hpp"

namespace checks {

// Largest observed/bound ratio of the restricted-moment bounds with A the
// eta-bulk, over every index combination of orders one to three. A value
// above 1 is a violation. Expectations are enumerated with lgamma-based
// pmf weights, independent of the library's log-space pmf.
inline double restricted_bound_ratio(const mllt::ModelParams& m, double eta) {
  const int d = m.dim();
  const auto n = m.trials();
  std::vector<oracle::Point> pts;
  std::vector<double> w;
  std::vector<bool> in;
  const std::vector<double> p(m.p().begin(), m.p().end());
  double outside = 0;
  oracle::each_point(d, n, [&](const oracle::Point& k) {
    pts.push_back(k);
    w.push_back(oracle::pmf_lgamma(p, n, k));
    in.push_back(mllt::in_bulk(m, k, eta));
    if (!in.back()) outside += w.back();
  });
  outside = std::min(1.0, outside);
  auto restricted = [&](std::vector<int> idx) {
    long double s = 0;
    for (std::size_t t = 0; t < pts.size(); ++t) {
      if (!in[t]) continue;
      long double f = 1;
      for (int i : idx) f *= pts[t][static_cast<std::size_t>(i)] - n * m.p(i);
      s += f * w[t];
    }
    return static_cast<double>(s);
  };
  using mllt::MomentKind;
  using mllt::RestrictedKind;
  double worst = 0;
  auto update = [&](double gap, double bound) {
    if (bound > 0)
      worst = std::max(worst, gap / bound);
    else if (gap > 1e-9)
      worst = std::max(worst, 2.0);
  };
  for (int i = 0; i < d; ++i) {
    update(std::fabs(restricted({i})), mllt::restricted_moment_bound(m, RestrictedKind::first, outside));
    for (int j = 0; j < d; ++j) {
      const double cov = mllt::closed_form_central_moment(m, {MomentKind::cov, i, j, 0}).leading;
      update(std::fabs(restricted({i, j}) - cov), mllt::restricted_moment_bound(m, RestrictedKind::second, outside));
      for (int l = 0; l < d; ++l) {
        const double third = mllt::closed_form_central_moment(m, {MomentKind::third, i, j, l}).leading;
        update(std::fabs(restricted({i, j, l}) - third),
               mllt::restricted_moment_bound(m, RestrictedKind::third, outside));
      }
    }
  }
  return worst;
}

// Central moment by enumeration with lgamma-based weights.
inline double central_moment(const mllt::ModelParams& m, const std::vector<int>& a) {
  const std::vector<double> p(m.p().begin(), m.p().end());
  long double s = 0;
  oracle::each_point(m.dim(), m.trials(), [&](const oracle::Point& k) {
    long double f = 1;
    for (int i = 0; i < m.dim(); ++i)
      for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) f *= k[static_cast<std::size_t>(i)] - m.trials() * m.p(i);
    s += f * oracle::pmf_lgamma(p, m.trials(), k);
  });
  return static_cast<double>(s);
}

}  // namespace checks
