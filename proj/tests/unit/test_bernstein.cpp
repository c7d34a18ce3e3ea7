#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mllt/bernstein.hpp"
#include "mllt/quadrature.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mllt;
using testing::error_of;

namespace {

Sample uniform_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n);
  for (auto& v : pts) v = {u(rng)};
  return Sample::create(std::move(pts));
}

}  // namespace

TEST_CASE("sample validation") {
  CHECK(error_of([] { Sample::create({{0.6, 0.5}}); }) == ErrorCode::OutOfSimplex);
  CHECK(error_of([] { Sample::create({{-0.1}}); }) == ErrorCode::OutOfSimplex);
  CHECK(error_of([] { Sample::create({}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { Sample::create({{0.1}, {0.1, 0.2}}); }) == ErrorCode::InvalidArgument);
  CHECK(Sample::create({{0.5, 0.5}}).dim() == 2);
}

TEST_CASE("simplex weights allow empty cells") {
  CHECK(simplex_weight(std::vector<double>{0.0}, 4, LatticePoint{0}) == 1.0);
  CHECK(simplex_weight(std::vector<double>{0.0}, 4, LatticePoint{1}) == 0.0);
  CHECK(simplex_weight(std::vector<double>{1.0}, 4, LatticePoint{4}) == 1.0);
  CHECK(simplex_weight(std::vector<double>{0.5}, 4, LatticePoint{2}) == doctest::Approx(0.375));
  CHECK(simplex_weight(std::vector<double>{0.2, 0.3}, 5, LatticePoint{1, 2}) ==
        doctest::Approx(oracle::pmf_double(std::vector<double>{0.2, 0.3}, 5, {1, 2})).epsilon(1e-13));
}

TEST_CASE("cdf estimator examples") {
  auto origin = Sample::create({{0.0, 0.0}, {0.0, 0.0}});
  for (auto x : {std::vector<double>{0.1, 0.2}, std::vector<double>{0.5, 0.5}, std::vector<double>{0.0, 0.0}})
    CHECK(cdf_estimator(origin, 30, x) == doctest::Approx(1.0).epsilon(1e-12));
  auto one = Sample::create({{0.5}});
  CHECK(cdf_estimator(one, 4, std::vector<double>{0.5}) == doctest::Approx(11.0 / 16).epsilon(1e-14));
}

TEST_CASE("cdf estimator vanishes below the data as N grows") {
  auto s = Sample::create({{0.6, 0.3}, {0.7, 0.2}});
  std::vector<double> x{0.2, 0.1};
  double prev = 1.0;
  for (std::int64_t n : {10, 40, 160, 640}) {
    const double v = cdf_estimator(s, n, x);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("cdf estimator is monotone along each coordinate") {
  auto s1 = uniform_sample(200, 3);
  double prev = -1;
  for (int i = 0; i <= 40; ++i) {
    const double v = cdf_estimator(s1, 25, std::vector<double>{i / 40.0});
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  std::mt19937_64 rng(5);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 150; ++i) {
    auto p = testing::random_p(rng, 2, 0.0);
    pts.push_back(p);
  }
  auto s2 = Sample::create(pts);
  for (int fixed = 0; fixed < 5; ++fixed)
    for (int axis = 0; axis < 2; ++axis) {
      prev = -1;
      for (int i = 0; i + fixed <= 20; ++i) {
        std::vector<double> x(2);
        x[static_cast<std::size_t>(axis)] = i / 20.0;
        x[static_cast<std::size_t>(1 - axis)] = fixed / 20.0;
        const double v = cdf_estimator(s2, 15, x);
        CHECK(v >= prev - 1e-14);
        prev = v;
      }
    }
}

TEST_CASE("cdf estimator does not depend on the worker count") {
  auto s = uniform_sample(300, 8);
  CHECK(cdf_estimator(s, 200, std::vector<double>{0.37}, 1) == cdf_estimator(s, 200, std::vector<double>{0.37}, 4));
}

TEST_CASE("density estimator of a uniform sample") {
  const std::size_t n = 100000;
  auto s = uniform_sample(n, 12345);
  const double tol = 3 / std::sqrt(static_cast<double>(n));
  for (double x : {0.25, 0.5, 0.75}) CHECK(std::fabs(density_estimator(s, 5, std::vector<double>{x}) - 1) <= tol);
  auto rule = gauss_legendre(40);
  std::vector<double> lo{0.0}, hi{1.0};
  auto small = uniform_sample(10000, 99);
  const double integral =
      tensor_integrate(lo, hi, rule, [&](std::span<const double> x) { return density_estimator(small, 20, x); });
  CHECK(std::fabs(integral - 1) <= 0.05);
}

TEST_CASE("density estimator is zero with no data in any bin") {
  // A point at the origin lies in no half-open bin (k/N, (k+1)/N].
  auto s = Sample::create({{0.0, 0.0}});
  CHECK(density_estimator(s, 10, std::vector<double>{0.3, 0.3}) == 0.0);
  CHECK(error_of([&] { density_estimator(s, 1, std::vector<double>{0.3, 0.3}); }).has_value());
}

TEST_CASE("density estimator puts each observation in one bin") {
  // N = 2, d = 1: the observation 0.7 sits in bin k = 1 and the weight is x.
  auto s = Sample::create({{0.7}});
  CHECK(density_estimator(s, 2, std::vector<double>{0.4}) == doctest::Approx(2 * 0.4));
  auto s2 = Sample::create({{0.5}});
  CHECK(density_estimator(s2, 2, std::vector<double>{0.4}) == doctest::Approx(2 * 0.6));
}

TEST_CASE("limit constant examples") {
  auto m = new_model({0.5}, 400);
  auto sq = limit_constant_sum_sq(m);
  CHECK(sq.limit == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(std::fabs(sq.finite_n / sq.limit - 1) <= 0.02);
  CHECK(sq.finite_n == doctest::Approx(0.56401286015502467).epsilon(1e-11));
  auto cube = limit_constant_sum_cube(m);
  CHECK(cube.limit == doctest::Approx(2 / (std::sqrt(3.0) * std::numbers::pi)).epsilon(1e-14));
  CHECK(std::fabs(cube.finite_n / cube.limit - 1) <= 0.03);
  CHECK(cube.finite_n == doctest::Approx(0.36724562104348425).epsilon(1e-11));
  auto mc = limit_constant_min_cross(m, 0);
  CHECK(mc.limit == doctest::Approx(-std::sqrt(0.25 / std::numbers::pi)).epsilon(1e-14));
  CHECK(mc.finite_n == doctest::Approx(-0.28200665094712358).epsilon(1e-10));
  CHECK(std::fabs(limit_constant_min_cross(m.with_trials(100), 0).finite_n / mc.limit - 1) <= 0.05);
  auto two = limit_constant_sum_sq(new_model({0.3, 0.4}, 50));
  CHECK(two.limit == doctest::Approx(0.41941010087072529).epsilon(1e-12));
  CHECK(error_of([&] { limit_constant_min_cross(m, 1); }) == ErrorCode::Index);
}

TEST_CASE("min cross constant matches the literal double sum") {
  for (const auto& p : std::vector<std::vector<double>>{{0.5}, {0.3}, {0.3, 0.4}, {0.15, 0.6}})
    for (std::int64_t n : {1, 2, 7, 16, 25})
      for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        auto m = new_model(p, n);
        const double want = oracle::min_cross_double_sum(p, n, i);
        CHECK(limit_constant_min_cross(m, i).finite_n == doctest::Approx(want).epsilon(1e-11));
        CHECK(limit_constant_min_cross(m, i).limit < 0);
      }
}

TEST_CASE("finite constants approach their limits") {
  for (double p : {0.5, 0.3, 0.15}) {
    double a = 1, b = 1, c = 1;
    for (std::int64_t n : {50, 100, 200, 400}) {
      auto m = new_model({p}, n);
      auto x = limit_constant_sum_sq(m);
      auto y = limit_constant_sum_cube(m);
      auto z = limit_constant_min_cross(m, 0);
      const double ea = std::fabs(x.finite_n / x.limit - 1), eb = std::fabs(y.finite_n / y.limit - 1),
                   ec = std::fabs(z.finite_n / z.limit - 1);
      CHECK(ea < a);
      CHECK(eb < b);
      CHECK(ec < c);
      a = ea;
      b = eb;
      c = ec;
    }
  }
}

TEST_CASE("power divergence examples") {
  auto m = new_model({0.3}, 10);
  const std::vector<std::int64_t> k{5, 5}, fit{3, 7};
  CHECK(power_divergence(m, k, 1.0) == doctest::Approx(4.0 / 3 + 4.0 / 7).epsilon(1e-13));
  CHECK(power_divergence(m, k, 1.0) == doctest::Approx(1.90476).epsilon(1e-5));
  for (double lambda : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0}) CHECK(power_divergence(m, fit, lambda) == 0.0);
  // Likelihood ratio and its dual.
  const double g2 = 2 * (5 * std::log(5 / 3.0) + 5 * std::log(5 / 7.0));
  CHECK(power_divergence(m, k, 0.0) == doctest::Approx(g2).epsilon(1e-13));
  const double dual = 2 * (3 * std::log(3 / 5.0) + 7 * std::log(7 / 5.0));
  CHECK(power_divergence(m, k, -1.0) == doctest::Approx(dual).epsilon(1e-13));
  // Freeman-Tukey form at lambda = -1/2.
  const double ft = 4 * (std::pow(std::sqrt(5.0) - std::sqrt(3.0), 2) + std::pow(std::sqrt(5.0) - std::sqrt(7.0), 2));
  CHECK(power_divergence(m, k, -0.5) == doctest::Approx(ft).epsilon(1e-12));
  CHECK(std::fabs(power_divergence(m, k, 1e-9) - power_divergence(m, k, 0.0)) <= 1e-6 * power_divergence(m, k, 0.0));
}

TEST_CASE("power divergence zero counts and argument checks") {
  auto m = new_model({0.3}, 10);
  const std::vector<std::int64_t> z{0, 10};
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(std::isfinite(power_divergence(m, z, 1.0)));
  CHECK(std::isfinite(power_divergence(m, z, 0.0)));
  CHECK(std::isfinite(power_divergence(m, z, -0.5)));
  CHECK(power_divergence(m, z, -1.0) == inf);
  CHECK(power_divergence(m, z, -2.0) == inf);
  CHECK(power_divergence(m, z, 0.0) == doctest::Approx(2 * 10 * std::log(10 / 7.0)).epsilon(1e-13));
  CHECK(error_of([&] { power_divergence(m, std::vector<std::int64_t>{5, 4}, 1.0); }) == ErrorCode::Counts);
  CHECK(error_of([&] { power_divergence(m, std::vector<std::int64_t>{11, -1}, 1.0); }) == ErrorCode::Counts);
  CHECK(error_of([&] { power_divergence(m, std::vector<std::int64_t>{10}, 1.0); }) == ErrorCode::Counts);
}

TEST_CASE("power divergence is continuous at its removable points") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 3;
    const std::int64_t n = 5 + static_cast<std::int64_t>(rng() % 100);
    auto m = new_model(testing::random_p(rng, d, 0.05), n);
    // Multinomial draws, as a goodness-of-fit statistic would see them.
    std::vector<double> w(m.p().begin(), m.p().end());
    w.push_back(m.q());
    std::discrete_distribution<int> cat(w.begin(), w.end());
    std::vector<std::int64_t> k(w.size(), 0);
    for (std::int64_t j = 0; j < n; ++j) ++k[static_cast<std::size_t>(cat(rng))];
    if (*std::min_element(k.begin(), k.end()) == 0) continue;
    for (double c : {0.0, -1.0}) {
      const double mid = power_divergence(m, k, c);
      CHECK(std::fabs(power_divergence(m, k, c + 1e-6) - mid) <= 1e-5);
      CHECK(std::fabs(power_divergence(m, k, c - 1e-6) - mid) <= 1e-5);
    }
  }
}

TEST_CASE("power divergence is never negative") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(-2.0, 3.0);
  for (int t = 0; t < 10000; ++t) {
    const int d = 1 + t % 4;
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 200);
    auto m = new_model(testing::random_p(rng, d, 1e-3), n);
    std::vector<std::int64_t> k(static_cast<std::size_t>(d) + 1, 0);
    for (std::int64_t j = 0; j < n; ++j) ++k[rng() % k.size()];
    const double l = t % 10 == 0 ? std::vector<double>{-2, -1, -0.5, 0, 1, 3}[static_cast<std::size_t>(t / 10 % 6)] : lam(rng);
    const double v = power_divergence(m, k, l);
    CHECK(v >= 0.0);
    CHECK(!std::isnan(v));
  }
}
