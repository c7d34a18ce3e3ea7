#include "mllt/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "mllt/error.hpp"
#include "mllt/exact.hpp"
#include "mllt/summation.hpp"

namespace mllt {

Sample Sample::create(std::vector<std::vector<double>> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "sample is empty");
  const std::size_t d = points.front().size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "sample points need d >= 1");
  for (const auto& x : points) {
    if (x.size() != d) throw Error(ErrorCode::InvalidArgument, "sample points differ in length");
    double sum = 0.0;
    for (double v : x) {
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorCode::OutOfSimplex, "sample coordinates must be finite and >= 0");
      sum += v;
    }
    if (sum > 1.0 + 1e-12) throw Error(ErrorCode::OutOfSimplex, "sample point sums above 1");
  }
  return Sample(std::move(points));
}

namespace {

void require_point(std::span<const double> x, int d) {
  if (static_cast<int>(x.size()) != d)
    throw Error(ErrorCode::InvalidArgument, "evaluation point must have length d");
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::OutOfSimplex, "evaluation point must be in the simplex");
    sum += v;
  }
  if (sum > 1.0 + 1e-12) throw Error(ErrorCode::OutOfSimplex, "evaluation point sums above 1");
}

// Smallest integer j with v <= j / N.
std::int64_t grid_ceiling(double v, std::int64_t trials) {
  const double n = static_cast<double>(trials);
  auto j = static_cast<std::int64_t>(std::ceil(v * n));
  while (j > 0 && v <= static_cast<double>(j - 1) / n) --j;
  while (v > static_cast<double>(j) / n) ++j;
  return j;
}

}  // namespace

double simplex_weight(std::span<const double> x, std::int64_t trials,
                      std::span<const std::int64_t> k) {
  CompensatedSum mass;
  std::int64_t used = 0;
  double log_w = log_factorial(trials);
  for (std::size_t i = 0; i < x.size(); ++i) {
    mass += x[i];
    used += k[i];
    log_w -= log_factorial(k[i]);
    if (k[i] > 0) {
      if (x[i] <= 0.0) return 0.0;
      log_w += static_cast<double>(k[i]) * std::log(x[i]);
    }
  }
  if (used > trials) return 0.0;
  const std::int64_t rest = trials - used;
  log_w -= log_factorial(rest);
  if (rest > 0) {
    const double q = 1.0 - mass.value();
    if (q <= 1e-15) return 0.0;
    log_w += static_cast<double>(rest) * std::log(q);
  }
  return std::exp(log_w);
}

double cdf_estimator(const Sample& s, std::int64_t trials, std::span<const double> x,
                     unsigned threads) {
  const int d = s.dim();
  require_point(x, d);
  if (trials < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
  const std::int64_t n = trials;
  // X_j <= k/N componentwise iff k >= ceil_j componentwise.
  std::vector<LatticePoint> ceil_pts;
  ceil_pts.reserve(s.size());
  for (const auto& pt : s.points()) {
    LatticePoint c(pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i) c[i] = grid_ceiling(pt[i], n);
    ceil_pts.push_back(std::move(c));
  }
  const double inv_n = 1.0 / static_cast<double>(s.size());
  return lattice_sum(
      simplex_box(d, n), n,
      [&](const LatticePoint& k) {
        const double w = simplex_weight(x, n, k);
        if (w == 0.0) return 0.0;
        std::size_t below = 0;
        for (const auto& c : ceil_pts) {
          bool ok = true;
          for (std::size_t i = 0; i < c.size() && ok; ++i) ok = c[i] <= k[i];
          below += ok ? 1 : 0;
        }
        return static_cast<double>(below) * inv_n * w;
      },
      threads);
}

double density_estimator(const Sample& s, std::int64_t trials, std::span<const double> x) {
  const int d = s.dim();
  require_point(x, d);
  const std::int64_t n = trials;
  if (n < 2) throw Error(ErrorCode::ZeroTrials, "density estimator needs N >= 2");
  // X in (k/N, (k+1)/N] iff k = ceil(N X) - 1 on every axis.
  std::map<LatticePoint, std::size_t> bins;
  for (const auto& pt : s.points()) {
    LatticePoint k(pt.size());
    std::int64_t used = 0;
    bool inside = true;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      k[i] = grid_ceiling(pt[i], n) - 1;
      used += k[i];
      inside = inside && k[i] >= 0;
    }
    if (inside && used <= n - 1) ++bins[k];
  }
  const double log_scale = log_factorial(n - 1 + d) - log_factorial(n - 1);
  CompensatedSum total;
  for (const auto& [k, count] : bins)
    total += static_cast<double>(count) * simplex_weight(x, n - 1, k);
  return std::exp(log_scale) * total.value() / static_cast<double>(s.size());
}

namespace {

double prod_p_q(const ModelParams& m) {
  double v = m.q();
  for (double p : m.p()) v *= p;
  return v;
}

template <int Power>
double power_sum(const ModelParams& m, unsigned threads) {
  if (m.trials() < 2) throw Error(ErrorCode::ZeroTrials, "limit constants need N >= 2");
  const ModelParams lower = m.with_trials(m.trials() - 1);
  return lattice_sum(
      simplex_box(m.dim(), lower.trials()), lower.trials(),
      [&](const LatticePoint& k) { return std::exp(Power * log_pmf(lower, k)); }, threads);
}

}  // namespace

LimitConstant limit_constant_sum_sq(const ModelParams& m, unsigned threads) {
  const double scale = std::pow(static_cast<double>(m.trials() - 1), 0.5 * m.dim());
  LimitConstant c;
  c.finite_n = scale * power_sum<2>(m, threads);
  c.limit = 1.0 / std::sqrt(std::pow(4.0 * std::numbers::pi, m.dim()) * prod_p_q(m));
  return c;
}

LimitConstant limit_constant_sum_cube(const ModelParams& m, unsigned threads) {
  const double scale = std::pow(static_cast<double>(m.trials() - 1), m.dim());
  LimitConstant c;
  c.finite_n = scale * power_sum<3>(m, threads);
  c.limit = 1.0 / (std::pow(2.0 * std::sqrt(3.0) * std::numbers::pi, m.dim()) * prod_p_q(m));
  return c;
}

LimitConstant limit_constant_min_cross(const ModelParams& m, int i) {
  if (i < 0 || i >= m.dim()) throw Error(ErrorCode::Index, "category index out of range");
  const std::int64_t n = m.trials();
  const double p = m.p(i);
  const ModelParams marginal = ModelParams::create({p}, n);
  // E[min(A, B)] = sum_{t >= 1} P(A >= t)^2 for i.i.d. Binomial(N, p_i).
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  for (std::int64_t a = 0; a <= n; ++a) {
    const std::int64_t k[1] = {a};
    pmf[static_cast<std::size_t>(a)] = std::exp(log_pmf(marginal, k));
  }
  CompensatedSum survival, expected_min;
  for (std::int64_t t = n; t >= 1; --t) {
    survival += pmf[static_cast<std::size_t>(t)];
    const double s = survival.value();
    expected_min += s * s;
  }
  const double nn = static_cast<double>(n);
  LimitConstant c;
  c.finite_n = std::sqrt(nn) * (expected_min.value() / nn - p);
  c.limit = -std::sqrt(p * (1.0 - p) / std::numbers::pi);
  return c;
}

double power_divergence(const ModelParams& m, std::span<const std::int64_t> k_full,
                        double lambda) {
  const int d = m.dim();
  if (static_cast<int>(k_full.size()) != d + 1)
    throw Error(ErrorCode::Counts, "counts must have d+1 entries");
  std::int64_t total = 0;
  for (std::int64_t v : k_full) {
    if (v < 0) throw Error(ErrorCode::Counts, "counts must be nonnegative");
    total += v;
  }
  if (total != m.trials()) throw Error(ErrorCode::Counts, "counts must sum to N");
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be finite");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kSnap = 1e-7;
  const double n = static_cast<double>(m.trials());
  // Every term is written as a convex function of K/E vanishing to second
  // order at K = E; the added multiples of K - E sum to zero.
  CompensatedSum sum;
  for (int i = 0; i <= d; ++i) {
    const double k = static_cast<double>(k_full[static_cast<std::size_t>(i)]);
    const double e = n * m.category(i);
    const double log_ratio = k > 0.0 ? std::log(k / e) : -kInf;
    double term = 0.0;
    if (std::fabs(lambda) < kSnap) {
      term = (k > 0.0 ? k * log_ratio : 0.0) - (k - e);
    } else if (std::fabs(lambda + 1.0) < kSnap) {
      if (k == 0.0) return kInf;
      term = -e * log_ratio - (e - k);
    } else if (lambda >= -0.5) {
      const double grow = k > 0.0 ? k * std::expm1(lambda * log_ratio) : 0.0;
      term = (grow - lambda * (k - e)) / (lambda * (lambda + 1.0));
    } else {
      const double a = 1.0 + lambda;
      if (k == 0.0 && a < 0.0) return kInf;
      const double grow = k > 0.0 ? e * std::expm1(a * log_ratio) : -e;
      term = (grow - a * (k - e)) / (lambda * (lambda + 1.0));
    }
    sum += std::max(0.0, term);
  }
  return 2.0 * sum.value();
}

}  // namespace mllt
