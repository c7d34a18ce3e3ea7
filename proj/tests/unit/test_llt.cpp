#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mllt/exact_rational.hpp"
#include "mllt/llt.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mllt;
using testing::error_of;

TEST_CASE("order names") {
  CHECK(parse_order("0") == Order::zero);
  CHECK(parse_order("half") == Order::half);
  CHECK(parse_order("one") == Order::one);
  CHECK(to_string(Order::half) == "half");
  CHECK(error_of([] { parse_order("two"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("coefficients at zero deviation") {
  auto m = new_model({0.2, 0.5}, 10);  // N p = (2, 5)
  auto raw = expansion_terms(m, LatticePoint{2, 5});
  auto sym = expansion_terms_symmetrized(m, LatticePoint{2, 5});
  const double want = (1.0 - 1 / 0.2 - 1 / 0.5 - 1 / 0.3) / 12;
  CHECK(raw.form == ExpansionForm::raw);
  CHECK(sym.form == ExpansionForm::symmetrized);
  CHECK(std::fabs(raw.c_half) < 1e-14);
  CHECK(std::fabs(sym.c_half) < 1e-14);
  CHECK(raw.c_one == doctest::Approx(want).epsilon(1e-12));
  CHECK(sym.c_one == doctest::Approx(want).epsilon(1e-12));
  CHECK(raw.base == doctest::Approx(gaussian_density(covariance(m), std::vector<double>{0, 0}) / 10).epsilon(1e-12));
}

TEST_CASE("symmetric binomial coefficients") {
  auto m = new_model({0.5}, 100);
  CHECK(expansion_terms(m, LatticePoint{50}).c_one == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(expansion_terms_symmetrized(m, LatticePoint{50}).c_one == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(std::fabs(expansion_terms(m, LatticePoint{55}).c_half) < 1e-14);
  CHECK(std::fabs(expansion_terms_symmetrized(m, LatticePoint{55}).c_half) < 1e-14);
}

TEST_CASE("c_half is odd under reflection when p equals q") {
  auto m = new_model({0.5}, 37);
  for (std::int64_t k = 0; k <= 37; ++k) {
    const double a = expansion_terms_symmetrized(m, LatticePoint{k}).c_half;
    const double b = expansion_terms_symmetrized(m, LatticePoint{37 - k}).c_half;
    CHECK(std::fabs(a + b) <= 1e-12 * (1 + std::fabs(a)));
  }
}

TEST_CASE("both coefficient forms match exact rational evaluation") {
  std::mt19937_64 rng(17);
  double worst_half = 0, worst_one = 0;
  for (int t = 0; t < 400; ++t) {
    const int d = 1 + t % 4;
    auto p = testing::random_p(rng, d, 0.03);
    auto m = new_model(p, 100);
    std::normal_distribution<double> z(0.0, 1.5);
    std::vector<double> delta(static_cast<std::size_t>(d));
    double last = 0;
    for (auto& v : delta) last -= (v = z(rng));
    auto ex = oracle::corrections(p, delta);
    const double half = ex.c_half.get_d(), one = ex.c_one.get_d();
    auto raw = raw_corrections(m, delta);
    auto sym = symmetrized_corrections(m, delta, last);
    auto at = corrections_at(m, delta);
    // Scale by the size of the terms so cancellation does not dominate.
    double mag_half = 0, mag_one = 0;
    for (int i = 0; i <= d; ++i) {
      const double di = i < d ? delta[static_cast<std::size_t>(i)] : last;
      const double r = di / m.category(i);
      mag_half += std::fabs(r) + std::fabs(di * r * r);
      mag_one += r * r + std::fabs(di * r * r * r) + 1 / m.category(i);
    }
    mag_one += half * half;
    worst_half = std::max({worst_half, std::fabs(raw.c_half - half) / mag_half, std::fabs(sym.c_half - half) / mag_half,
                           std::fabs(at.c_half - half) / mag_half});
    worst_one = std::max({worst_one, std::fabs(raw.c_one - one) / mag_one, std::fabs(sym.c_one - one) / mag_one,
                          std::fabs(at.c_one - one) / mag_one});
  }
  CHECK(worst_half <= 1e-13);
  CHECK(worst_one <= 1e-13);
}

TEST_CASE("approx_pmf examples") {
  auto m = new_model({0.5}, 100);
  CHECK(std::fabs(approx_pmf(m, LatticePoint{50}, Order::half).value - 0.0797885) < 1e-7);
  CHECK(std::fabs(approx_pmf(m, LatticePoint{50}, Order::one).value - 0.0795890) < 1e-6);
  CHECK(approx_pmf(m, LatticePoint{50}, Order::one).value == doctest::Approx(0.07958898494008578).epsilon(1e-12));
  CHECK(approx_pmf(m, LatticePoint{50}, Order::zero).value ==
        doctest::Approx(0.1 / std::sqrt(2 * std::numbers::pi * 0.25)).epsilon(1e-13));
  auto r = RationalParams::create({mpq_class(1, 2)}, 100);
  const double exact = pmf_exact_rational(r, LatticePoint{50}).get_d();
  CHECK(exact == doctest::Approx(0.079589237387178761).epsilon(1e-14));
  CHECK(std::fabs(approx_pmf(m, LatticePoint{50}, Order::one).value - exact) <= 5e-7);
}

TEST_CASE("negative brackets are clamped and flagged") {
  bool seen = false;
  for (double p : {0.2, 0.3}) {
    auto m = new_model({p}, 100);
    for (std::int64_t k = 0; k <= 100; ++k) {
      for (Order o : {Order::zero, Order::half, Order::one}) {
        const LatticePoint kk{k};
        auto a = approx_pmf(m, kk, o);
        auto dv = delta_vector(m, kk);
        const double bracket = truncated_bracket(corrections_at(m, dv.delta), 100, o);
        CHECK(a.value >= 0.0);
        CHECK(a.clamped == (bracket < 0));
        if (a.clamped) {
          CHECK(a.value == 0.0);
          seen = true;
        }
      }
    }
  }
  CHECK(seen);
}

TEST_CASE("approx_pmf is invariant under relabelling") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    auto p = testing::random_p(rng, 3, 0.05);
    const std::int64_t n = 50 + static_cast<std::int64_t>(rng() % 200);
    LatticePoint k(3);
    for (int i = 0; i < 3; ++i)
      k[static_cast<std::size_t>(i)] = std::llround(n * p[static_cast<std::size_t>(i)]) + static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& v : k) v = std::max<std::int64_t>(v, 0);
    if (k[0] + k[1] + k[2] > n) continue;
    std::array<int, 3> perm{2, 0, 1};
    std::vector<double> pp(3);
    LatticePoint kp(3);
    for (int i = 0; i < 3; ++i) {
      pp[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      kp[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    auto a = new_model(p, n), b = new_model(pp, n);
    for (Order o : {Order::zero, Order::half, Order::one})
      CHECK(std::fabs(approx_pmf(a, k, o).value - approx_pmf(b, kp, o).value) <= 1e-15);
  }
}

TEST_CASE("ratio error at the centre follows the next term") {
  for (std::int64_t n : {100, 400, 1600, 6400}) {
    auto m = new_model({0.5}, n);
    const double e = ratio_error(m, LatticePoint{n / 2}, Order::half);
    CHECK(e == doctest::Approx(0.25 / static_cast<double>(n)).epsilon(0.1));
  }
}

TEST_CASE("order one error shrinks about eightfold when N quadruples") {
  // Fixed deviation delta = 0.5 in both coordinates.
  auto err = [](std::int64_t n) {
    auto m = new_model({0.25, 0.25}, n);
    const std::int64_t shift = std::llround(0.5 * std::sqrt(static_cast<double>(n)));
    return std::fabs(ratio_error(m, LatticePoint{n / 4 + shift, n / 4 + shift}, Order::one));
  };
  for (std::int64_t n : {400, 1600, 6400}) {
    const double r = err(n) / err(4 * n);
    CHECK(r > 6.0);
    CHECK(r < 10.0);
  }
}

TEST_CASE("bulk box and bulk error") {
  auto m = new_model({0.5}, 100);
  auto b = bulk_box(m, 0.5);
  for (std::int64_t k = 0; k <= 100; ++k)
    if (in_bulk(m, LatticePoint{k}, 0.5)) {
      CHECK(k >= b.lo[0]);
      CHECK(k <= b.hi[0]);
      CHECK(k >= 45);
      CHECK(k <= 55);
    }
  CHECK(max_bulk_ratio_error(m, 0.5, Order::one) > 0);
  CHECK(max_bulk_ratio_error(m, 0.5, Order::one, 4) == max_bulk_ratio_error(m, 0.5, Order::one, 1));
  CHECK(error_of([&] { max_bulk_ratio_error(m, 1.5, Order::one); }) == ErrorCode::Eta);
}
