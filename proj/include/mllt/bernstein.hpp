#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mllt/model.hpp"

namespace mllt {

/// Observations on the closed simplex {x >= 0, |x| <= 1}.
class Sample {
 public:
  /// Throws OutOfSimplex for a point off the simplex (slack 1e-12 on the sum)
  /// and InvalidArgument for ragged or empty input.
  static Sample create(std::vector<std::vector<double>> points);

  int dim() const noexcept { return static_cast<int>(points_.front().size()); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }

 private:
  explicit Sample(std::vector<std::vector<double>> p) : points_(std::move(p)) {}
  std::vector<std::vector<double>> points_;
};

/// Multinomial(N, x) pmf at k for x on the closed simplex (zero cells allowed).
double simplex_weight(std::span<const double> x, std::int64_t trials,
                      std::span<const std::int64_t> k);

/// Sum over k in the simplex of width N of [fraction of the sample <= k/N]
/// times the Multinomial(N, x) weight.
double cdf_estimator(const Sample& s, std::int64_t trials, std::span<const double> x,
                     unsigned threads = 1);

/// Sum over k in the simplex of width N-1 of (N-1+d)!/(N-1)! times the
/// fraction of the sample in (k/N, (k+1)/N], weighted by Multinomial(N-1, x).
/// Needs N >= 2.
double density_estimator(const Sample& s, std::int64_t trials, std::span<const double> x);

struct LimitConstant {
  double finite_n = 0.0;
  double limit = 0.0;
};

/// (N-1)^{d/2} sum p_{N-1}(k)^2 against [(4 pi)^d p_1...p_d q]^{-1/2}. Needs N >= 2.
LimitConstant limit_constant_sum_sq(const ModelParams& m, unsigned threads = 1);

/// (N-1)^d sum p_{N-1}(k)^3 against [(2 sqrt(3) pi)^d p_1...p_d q]^{-1}. Needs N >= 2.
LimitConstant limit_constant_sum_cube(const ModelParams& m, unsigned threads = 1);

/// N^{1/2} sum_{k,l} ((k_i ^ l_i)/N - p_i) p_N(k) p_N(l) against
/// -sqrt(p_i (1 - p_i) / pi). The double sum only sees the i-th marginal, so
/// it reduces to E[min] of two independent binomials. Throws Index.
LimitConstant limit_constant_min_cross(const ModelParams& m, int i);

/// Power divergence T_lambda over all d+1 categories, with the likelihood
/// ratio limit at lambda = 0 and its dual at lambda = -1 (within 1e-7).
/// Returns +inf when a zero count makes the statistic unbounded.
/// Throws Counts unless k_full has d+1 nonnegative entries summing to N.
double power_divergence(const ModelParams& m, std::span<const std::int64_t> k_full, double lambda);

}  // namespace mllt
