#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace mllt {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int points);

/// Tensor-product Gauss-Legendre over the box [lo, hi].
template <class Fn>
double tensor_integrate(std::span<const double> lo, std::span<const double> hi,
                        const GaussLegendreRule& rule, Fn&& fn) {
  const std::size_t d = lo.size();
  const std::size_t n = rule.nodes.size();
  std::vector<double> half(d), mid(d), x(d);
  for (std::size_t i = 0; i < d; ++i) {
    half[i] = 0.5 * (hi[i] - lo[i]);
    mid[i] = 0.5 * (hi[i] + lo[i]);
  }
  std::vector<std::size_t> idx(d, 0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = mid[i] + half[i] * rule.nodes[idx[i]];
      w *= half[i] * rule.weights[idx[i]];
    }
    total += w * fn(std::span<const double>(x));
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  return total;
}

/// Tensor-product rule applied panel by panel: axis i is cut into
/// ceil((hi_i - lo_i) / max_width_i) equal panels (at most 4096).
template <class Fn>
double composite_tensor_integrate(std::span<const double> lo, std::span<const double> hi,
                                  std::span<const double> max_width,
                                  const GaussLegendreRule& rule, Fn&& fn) {
  const std::size_t d = lo.size();
  std::vector<std::size_t> panels(d), idx(d, 0);
  std::vector<double> step(d), plo(d), phi(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double width = hi[i] - lo[i];
    if (!(width > 0.0)) return 0.0;
    const double want = std::ceil(width / max_width[i]);
    panels[i] = static_cast<std::size_t>(std::clamp(want, 1.0, 4096.0));
    step[i] = width / static_cast<double>(panels[i]);
  }
  double total = 0.0, carry = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) {
      plo[i] = lo[i] + step[i] * static_cast<double>(idx[i]);
      phi[i] = idx[i] + 1 == panels[i] ? hi[i] : plo[i] + step[i];
    }
    // Neumaier accumulation across panels.
    const double v = tensor_integrate(std::span<const double>(plo), std::span<const double>(phi),
                                      rule, fn);
    const double t = total + v;
    carry += std::fabs(total) >= std::fabs(v) ? (total - t) + v : (v - t) + total;
    total = t;
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < panels[i]) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  return total + carry;
}

/// P(a < Z < b) for standard normal Z, accurate in both tails.
double normal_interval(double a, double b);

double normal_cdf(double z);

/// Integral over [a, b] of s*sqrt(2 pi)*g*(density of N(mu, s^2)), i.e. of
/// g*exp(-(t-mu)^2 / (2 s^2)).
double gaussian_bump_integral(double log_g, double mu, double s, double a, double b);

/// Exact integral over [a, b] of |c - g*exp(-(t-mu)^2 / (2 s^2))| for c >= 0.
double abs_gap_integral(double c, double log_g, double mu, double s, double a, double b);

/// Gaussian density exp(log_norm - (x-mean)^T P (x-mean) / 2) viewed as a
/// one-dimensional bump along its last axis once the leading coordinates are fixed.
class GaussianSlices {
 public:
  struct Slice {
    double log_scale;  // log of the bump height
    double mu;         // bump centre on the last axis
    double s;          // bump width on the last axis
  };

  GaussianSlices(std::vector<double> mean, std::vector<double> precision, double log_norm);

  int dim() const noexcept { return static_cast<int>(mean_.size()); }

  /// `leading` holds the first d-1 coordinates.
  Slice slice(std::span<const double> leading) const;

  double log_density(std::span<const double> x) const;

 private:
  std::vector<double> mean_;
  std::vector<double> precision_;
  double log_norm_;
};

}  // namespace mllt
