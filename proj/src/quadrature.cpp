#include "mllt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "mllt/error.hpp"

namespace mllt {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = pk;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  const std::size_t n = static_cast<std::size_t>(points);
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// Upper tail P(Z > z).
double upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

double normal_cdf(double z) { return upper_tail(-z); }

double normal_interval(double a, double b) {
  if (!(b > a)) return 0.0;
  if (a >= 0.0) return upper_tail(a) - upper_tail(b);
  if (b <= 0.0) return upper_tail(-b) - upper_tail(-a);
  return 1.0 - upper_tail(-a) - upper_tail(b);
}

double gaussian_bump_integral(double log_g, double mu, double s, double a, double b) {
  const double mass = normal_interval((a - mu) / s, (b - mu) / s);
  if (mass <= 0.0) return 0.0;
  return std::exp(log_g + std::log(s * std::sqrt(2.0 * std::numbers::pi) * mass));
}

double abs_gap_integral(double c, double log_g, double mu, double s, double a, double b) {
  if (!(b > a)) return 0.0;
  if (c <= 0.0) return gaussian_bump_integral(log_g, mu, s, a, b);
  const double log_c = std::log(c);
  std::array<double, 4> cuts{a, b, a, b};
  std::size_t n_cuts = 2;
  if (log_g > log_c) {
    const double r = s * std::sqrt(2.0 * (log_g - log_c));
    for (double root : {mu - r, mu + r})
      if (root > a && root < b) cuts[n_cuts++] = root;
  }
  std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n_cuts; ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    total += std::fabs(c * (hi - lo) - gaussian_bump_integral(log_g, mu, s, lo, hi));
  }
  return total;
}

GaussianSlices::GaussianSlices(std::vector<double> mean, std::vector<double> precision,
                               double log_norm)
    : mean_(std::move(mean)), precision_(std::move(precision)), log_norm_(log_norm) {}

GaussianSlices::Slice GaussianSlices::slice(std::span<const double> leading) const {
  const std::size_t d = mean_.size();
  const std::size_t last = d - 1;
  const double p_ll = precision_[last * d + last];
  double cross = 0.0;
  double rest = 0.0;
  for (std::size_t i = 0; i < last; ++i) {
    const double zi = leading[i] - mean_[i];
    cross += precision_[last * d + i] * zi;
    for (std::size_t j = 0; j < last; ++j) rest += zi * precision_[i * d + j] * (leading[j] - mean_[j]);
  }
  Slice out;
  out.mu = mean_[last] - cross / p_ll;
  out.s = 1.0 / std::sqrt(p_ll);
  out.log_scale = log_norm_ - 0.5 * (rest - cross * cross / p_ll);
  return out;
}

double GaussianSlices::log_density(std::span<const double> x) const {
  const std::size_t d = mean_.size();
  double quad = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      quad += (x[i] - mean_[i]) * precision_[i * d + j] * (x[j] - mean_[j]);
  return log_norm_ - 0.5 * quad;
}

}  // namespace mllt
