#include "mllt/gauss_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mllt/error.hpp"
#include "mllt/exact.hpp"
#include "mllt/quadrature.hpp"

namespace mllt {

double SmoothedLaw::density(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != m_.dim())
    throw Error(ErrorCode::InvalidArgument, "point must have length d");
  LatticePoint k(x.size());
  std::int64_t used = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return 0.0;
    const double r = std::floor(x[i] + 0.5);
    if (r < 0.0 || r > static_cast<double>(m_.trials())) return 0.0;
    k[i] = static_cast<std::int64_t>(r);
    used += k[i];
  }
  if (used > m_.trials()) return 0.0;
  return std::exp(log_pmf(m_, k));
}

double SmoothedLaw::total_mass(unsigned threads) const {
  return lattice_sum(
      simplex_box(m_.dim(), m_.trials()), m_.trials(),
      [&](const LatticePoint& k) { return std::exp(log_pmf(m_, k)); }, threads);
}

namespace {

// Roots in (lo, hi) of the quadratic through (lo, f0), (mid, f1), (hi, f2).
void quadratic_roots(double lo, double hi, double f0, double f1, double f2,
                     std::vector<double>& out) {
  const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double c = f1, b = (f2 - f0) / (2.0 * h), a = (f2 - 2.0 * f1 + f0) / (2.0 * h * h);
  const auto keep = [&](double s) {
    const double u = mid + s;
    if (std::isfinite(u) && u > lo && u < hi) out.push_back(u);
  };
  const double scale = std::fabs(b) * h + std::fabs(c) + 1e-300;
  if (std::fabs(a) * h * h <= 1e-14 * scale) {
    if (b != 0.0) keep(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  keep(q / a);
  if (q != 0.0) keep(c / q);
}

// Integral over the strip [ulo, uhi] x [a, b] of |c - density| where the
// axis before the last one is u and `lead` fixes the earlier coordinates.
// The integrand in u is smooth except where a crossing point of the level
// c enters or leaves [a, b], or where the slice peak touches c; each of these
// is a root of a quadratic in u, so the strip is split there first.
double gap_over_strip(const GaussianSlices& g, std::vector<double>& lead, double ulo, double uhi,
                      double a, double b, double c, const GaussLegendreRule& rule) {
  const std::size_t ui = lead.size() - 1;
  std::vector<double> full(lead.size() + 1);
  std::copy(lead.begin(), lead.end(), full.begin());
  const double log_c = c > 0.0 ? std::log(c) : -std::numeric_limits<double>::infinity();
  std::vector<double> cuts{ulo, uhi};
  if (c > 0.0) {
    const double us[3] = {ulo, 0.5 * (ulo + uhi), uhi};
    double edge_a[3], edge_b[3], peak[3];
    for (int j = 0; j < 3; ++j) {
      full[ui] = us[j];
      full[ui + 1] = a;
      edge_a[j] = g.log_density(full) - log_c;
      full[ui + 1] = b;
      edge_b[j] = g.log_density(full) - log_c;
      lead[ui] = us[j];
      peak[j] = g.slice(lead).log_scale - log_c;
    }
    quadratic_roots(ulo, uhi, edge_a[0], edge_a[1], edge_a[2], cuts);
    quadratic_roots(ulo, uhi, edge_b[0], edge_b[1], edge_b[2], cuts);
    quadratic_roots(ulo, uhi, peak[0], peak[1], peak[2], cuts);
    std::sort(cuts.begin(), cuts.end());
  }
  double total = 0.0;
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double lo = cuts[piece], hi = cuts[piece + 1];
    if (!(hi > lo)) continue;
    // u = lo + (hi - lo) w^2 (3 - 2w): square-root behaviour at a tangency
    // endpoint becomes polynomial in w.
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double w = 0.5 * (rule.nodes[j] + 1.0);
      const double jac = 6.0 * w * (1.0 - w) * (hi - lo);
      lead[ui] = lo + (hi - lo) * w * w * (3.0 - 2.0 * w);
      const GaussianSlices::Slice sl = g.slice(lead);
      total += 0.5 * rule.weights[j] * jac * abs_gap_integral(c, sl.log_scale, sl.mu, sl.s, a, b);
    }
  }
  return total;
}

}  // namespace

TVReport tv_distance_numeric(const ModelParams& m, int nodes_per_axis, unsigned threads) {
  if (nodes_per_axis < 4) throw Error(ErrorCode::InvalidArgument, "nodes_per_axis must be >= 4");
  const int d = m.dim();
  const auto du = static_cast<std::size_t>(d);
  const double n = static_cast<double>(m.trials());
  const CovarianceSpec cov = covariance(m);

  // Normal(Np, N Sigma) in count coordinates.
  std::vector<double> mean(du), precision(du * du);
  for (std::size_t i = 0; i < du; ++i) mean[i] = n * m.p(static_cast<int>(i));
  for (std::size_t i = 0; i < du * du; ++i) precision[i] = cov.sigma_inv[i] / n;
  const double log_norm =
      -0.5 * (d * std::log(2.0 * std::numbers::pi) + d * std::log(n) + std::log(cov.det));
  const GaussianSlices gauss(mean, precision, log_norm);

  LatticeBox window;
  for (std::size_t i = 0; i < du; ++i) {
    const double sd = std::sqrt(n * cov.sigma[i * du + i]);
    window.lo.push_back(static_cast<std::int64_t>(std::max(0.0, std::floor(mean[i] - 10.0 * sd))));
    window.hi.push_back(static_cast<std::int64_t>(std::min(n, std::ceil(mean[i] + 10.0 * sd))));
  }

  const GaussLegendreRule rule = gauss_legendre(nodes_per_axis);
  const std::size_t outer = du - 1;
  // Per cell: integral of |p - phi|, p, Gaussian mass of the cube, 1.
  const auto sums = lattice_sums<4>(
      window, m.trials(),
      [&](const LatticePoint& k) {
        const double pk = std::exp(log_pmf(m, k));
        const double a = static_cast<double>(k[outer]) - 0.5;
        const double b = a + 1.0;
        const std::size_t tensor_axes = outer == 0 ? 0 : outer - 1;
        std::vector<double> lo(tensor_axes), hi(tensor_axes);
        for (std::size_t i = 0; i < tensor_axes; ++i) {
          lo[i] = static_cast<double>(k[i]) - 0.5;
          hi[i] = static_cast<double>(k[i]) + 0.5;
        }
        std::vector<double> lead(outer);
        const auto gap_given = [&](std::span<const double> front) {
          std::copy(front.begin(), front.end(), lead.begin());
          if (outer == 0) {
            const GaussianSlices::Slice sl = gauss.slice(lead);
            return abs_gap_integral(pk, sl.log_scale, sl.mu, sl.s, a, b);
          }
          const double u = static_cast<double>(k[outer - 1]);
          return gap_over_strip(gauss, lead, u - 0.5, u + 0.5, a, b, pk, rule);
        };
        const auto mass_given = [&](std::span<const double> front) {
          std::copy(front.begin(), front.end(), lead.begin());
          if (outer == 0) {
            const GaussianSlices::Slice sl = gauss.slice(lead);
            return gaussian_bump_integral(sl.log_scale, sl.mu, sl.s, a, b);
          }
          const double u = static_cast<double>(k[outer - 1]);
          const double half = 0.5;
          double total = 0.0;
          for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            lead[outer - 1] = u + half * rule.nodes[j];
            const GaussianSlices::Slice sl = gauss.slice(lead);
            total += half * rule.weights[j] * gaussian_bump_integral(sl.log_scale, sl.mu, sl.s, a, b);
          }
          return total;
        };
        const double gap = tensor_integrate(std::span<const double>(lo),
                                            std::span<const double>(hi), rule, gap_given);
        const double mass = tensor_integrate(std::span<const double>(lo),
                                             std::span<const double>(hi), rule, mass_given);
        return std::array<double, 4>{gap, pk, mass, 1.0};
      },
      threads);

  const double p_outside = std::max(0.0, 1.0 - sums[1]);
  TVReport r;
  r.cell_contribution = sums[0] + p_outside;
  r.outside_mass = std::clamp(1.0 - sums[2], 0.0, 1.0);
  r.tv = std::clamp(0.5 * (r.cell_contribution + r.outside_mass), 0.0, 1.0);
  r.cells_evaluated = static_cast<std::uint64_t>(sums[3]);
  // Off-window cells are counted as p + Q; the true integral is at least |p - Q|.
  r.truncation_bound = 2.0 * std::min(p_outside, r.outside_mass);
  return r;
}

HellingerTail hellinger_upper_bound_terms(const ModelParams& m, double eta, unsigned threads) {
  require_eta(eta);
  const int d = m.dim();
  const double n = static_cast<double>(m.trials());
  const double n23 = std::cbrt(n * n);
  const double mass = lattice_sum(
      simplex_box(d, m.trials()), m.trials(),
      [&](const LatticePoint& k) {
        bool touches = false;
        std::int64_t used = 0;
        for (int i = 0; i < d; ++i) {
          const double ki = static_cast<double>(k[static_cast<std::size_t>(i)]);
          used += k[static_cast<std::size_t>(i)];
          if (std::fabs(ki - n * m.p(i)) + 0.5 > eta * m.p(i) * n23) touches = true;
        }
        const double off = std::fabs(static_cast<double>(used) - n * (1.0 - m.q()));
        if (off + 0.5 * d > eta * m.q() * n23) touches = true;
        return touches ? std::exp(log_pmf(m, k)) : 0.0;
      },
      threads);
  HellingerTail h;
  h.tail_term = 2.0 * mass;
  const double lo = m.min_category();
  h.cap = 100.0 * d * std::exp(-lo * lo * std::cbrt(n) / (100.0 * d * d));
  h.bound_valid = h.tail_term <= h.cap;
  return h;
}

TailMass tail_mass_outside_bulk(const ModelParams& m, double eta, unsigned threads) {
  require_eta(eta);
  const auto sums = lattice_sums<2>(
      simplex_box(m.dim(), m.trials()), m.trials(),
      [&](const LatticePoint& k) {
        const double pk = std::exp(log_pmf(m, k));
        return in_bulk(m, k, eta) ? std::array<double, 2>{0.0, pk}
                                  : std::array<double, 2>{pk, 0.0};
      },
      threads);
  TailMass t;
  t.exact_mass = sums[0];
  t.in_bulk_mass = sums[1];
  const double n13 = std::cbrt(static_cast<double>(m.trials()));
  for (int i = 0; i <= m.dim(); ++i) {
    const double pi = m.category(i);
    t.azuma_bound += 2.0 * std::exp(-eta * eta * pi * pi * n13 / 2.0);
  }
  return t;
}

std::int64_t empirical_cap_threshold(std::vector<double> p, double eta, std::int64_t n_lo,
                                     std::int64_t n_hi, unsigned threads) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorCode::InvalidArgument, "need 1 <= n_lo <= n_hi");
  std::int64_t threshold = 0;
  for (std::int64_t n = n_lo; n <= n_hi; n *= 2) {
    const bool ok = hellinger_upper_bound_terms(ModelParams::create(p, n), eta, threads).bound_valid;
    if (!ok) threshold = 0;
    else if (threshold == 0) threshold = n;
  }
  return threshold;
}

std::vector<double> kernel_t1(const ModelParams& m, std::span<const std::int64_t> k,
                              std::span<const double> noise) {
  require_in_simplex(m, k);
  if (noise.size() != k.size()) throw Error(ErrorCode::InvalidArgument, "noise must have length d");
  std::vector<double> x(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!(noise[i] > -0.5 && noise[i] < 0.5))
      throw Error(ErrorCode::InvalidArgument, "noise entries must lie in (-1/2, 1/2)");
    x[i] = static_cast<double>(k[i]) + noise[i];
  }
  return x;
}

LatticePoint kernel_t2(const ModelParams& m, std::span<const double> y) {
  if (static_cast<int>(y.size()) != m.dim())
    throw Error(ErrorCode::InvalidArgument, "point must have length d");
  const std::int64_t n = m.trials();
  LatticePoint k(y.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) throw Error(ErrorCode::InvalidArgument, "point must be finite");
    k[i] = static_cast<std::int64_t>(std::clamp(std::round(y[i]), 0.0, static_cast<double>(n)));
    total += k[i];
  }
  if (total <= n) return k;

  // Repeatedly decrementing the largest entry ends with every entry capped at
  // a level T, plus one extra unit removed from the first r entries at T.
  const std::int64_t excess = total - n;
  const auto above = [&](std::int64_t level) {
    std::int64_t s = 0;
    for (std::int64_t v : k) s += std::max<std::int64_t>(0, v - level);
    return s;
  };
  std::int64_t lo = 0, hi = *std::max_element(k.begin(), k.end());
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (above(mid) <= excess) hi = mid;
    else lo = mid + 1;
  }
  std::int64_t rest = excess - above(lo);
  for (auto& v : k) {
    v = std::min(v, lo);
    if (rest > 0 && v == lo) {
      --v;
      --rest;
    }
  }
  return k;
}

}  // namespace mllt
