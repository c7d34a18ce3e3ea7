#include "mllt/llt.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mllt/error.hpp"
#include "mllt/exact.hpp"
#include "mllt/summation.hpp"

namespace mllt {

std::string_view to_string(Order order) {
  switch (order) {
    case Order::zero: return "0";
    case Order::half: return "half";
    case Order::one: return "one";
  }
  return "?";
}

Order parse_order(std::string_view text) {
  if (text == "0" || text == "zero") return Order::zero;
  if (text == "half") return Order::half;
  if (text == "one" || text == "1") return Order::one;
  throw Error(ErrorCode::InvalidArgument, "order must be one of 0, half, one");
}

Corrections raw_corrections(const ModelParams& m, std::span<const double> delta) {
  const int d = m.dim();
  const double q = m.q();
  const auto dl = [&](int i) { return delta[static_cast<std::size_t>(i)]; };
  // {1/p_i^2 1{i=j=l} - 1/q^2}
  const auto cubic_coef = [&](int i, int j, int l) {
    return (i == j && j == l ? 1.0 / (m.p(i) * m.p(i)) : 0.0) - 1.0 / (q * q);
  };

  CompensatedSum linear;
  for (int i = 0; i < d; ++i) linear += dl(i) * (1.0 / m.p(i) - 1.0 / q);

  CompensatedSum cubic;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l) cubic += dl(i) * dl(j) * dl(l) * cubic_coef(i, j, l);

  CompensatedSum quartic_mixed, quartic_pure;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        for (int mm = 0; mm < d; ++mm) {
          const double mono = dl(i) * dl(j) * dl(l) * dl(mm);
          quartic_mixed += mono * cubic_coef(i, j, l) * (1.0 / m.p(mm) - 1.0 / q);
          const double diag =
              (i == j && j == l && l == mm) ? 1.0 / (m.p(i) * m.p(i) * m.p(i)) : 0.0;
          quartic_pure += mono * (diag + 1.0 / (q * q * q));
        }

  CompensatedSum quadratic;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double coef = (i == j ? 3.0 / (m.p(i) * m.p(i)) : 0.0) +
                          (i < j ? 2.0 / (m.p(i) * m.p(j)) : 0.0) - 2.0 / (m.p(i) * q) +
                          3.0 / (q * q);
      quadratic += dl(i) * dl(j) * coef;
    }

  CompensatedSum inverse_sum;
  for (int i = 0; i < d; ++i) inverse_sum += 1.0 / m.p(i);
  inverse_sum += 1.0 / q;

  Corrections out;
  const double cubic_v = cubic.value();
  CompensatedSum half;
  half += -0.5 * linear.value();
  half += cubic_v / 6.0;
  out.c_half = half.value();

  CompensatedSum one;
  one += -quartic_mixed.value() / 12.0;
  one += -quartic_pure.value() / 12.0;
  one += cubic_v * cubic_v / 72.0;
  one += quadratic.value() / 8.0;
  one += (1.0 - inverse_sum.value()) / 12.0;
  out.c_one = one.value();
  return out;
}

Corrections symmetrized_corrections(const ModelParams& m, std::span<const double> delta,
                                    double delta_last) {
  const int d = m.dim();
  CompensatedSum linear, cubic, square, quartic, inverse_sum;
  for (int i = 0; i <= d; ++i) {
    const double di = i == d ? delta_last : delta[static_cast<std::size_t>(i)];
    const double pi = m.category(i);
    const double r = di / pi;
    linear += r;
    cubic += di * r * r;
    square += r * r;
    quartic += di * r * r * r;
    inverse_sum += 1.0 / pi;
  }
  Corrections out;
  CompensatedSum half;
  half += -0.5 * linear.value();
  half += cubic.value() / 6.0;
  out.c_half = half.value();

  CompensatedSum one;
  one += 0.5 * out.c_half * out.c_half;
  one += 0.25 * square.value();
  one += -quartic.value() / 12.0;
  one += (1.0 - inverse_sum.value()) / 12.0;
  out.c_one = one.value();
  return out;
}

Corrections corrections_at(const ModelParams& m, std::span<const double> delta) {
  double running = 0.0;
  for (double v : delta) running += v;
  return symmetrized_corrections(m, delta, -running);
}

double log_base(const ModelParams& m, std::span<const double> delta) {
  return -0.5 * m.dim() * std::log(static_cast<double>(m.trials())) +
         log_gaussian_density(m, delta);
}

ExpansionTerms expansion_terms(const ModelParams& m, std::span<const std::int64_t> k) {
  const DeltaVector dv = delta_vector(m, k);
  const Corrections c = raw_corrections(m, dv.delta);
  return ExpansionTerms{std::exp(log_base(m, dv.delta)), c.c_half, c.c_one, ExpansionForm::raw};
}

ExpansionTerms expansion_terms_symmetrized(const ModelParams& m,
                                           std::span<const std::int64_t> k) {
  const DeltaVector dv = delta_vector(m, k);
  const Corrections c = symmetrized_corrections(m, dv.delta, dv.delta_last);
  return ExpansionTerms{std::exp(log_base(m, dv.delta)), c.c_half, c.c_one,
                        ExpansionForm::symmetrized};
}

double truncated_bracket(const Corrections& c, std::int64_t trials, Order order) {
  const double n = static_cast<double>(trials);
  switch (order) {
    case Order::zero: return 1.0;
    case Order::half: return 1.0 + c.c_half / std::sqrt(n);
    case Order::one: return 1.0 + c.c_half / std::sqrt(n) + c.c_one / n;
  }
  return 1.0;
}

Approximation approx_pmf(const ModelParams& m, std::span<const std::int64_t> k, Order order) {
  const ExpansionTerms t = expansion_terms_symmetrized(m, k);
  const double bracket = truncated_bracket({t.c_half, t.c_one}, m.trials(), order);
  if (bracket < 0.0) return Approximation{0.0, true};
  return Approximation{t.base * bracket, false};
}

double ratio_error(const ModelParams& m, std::span<const std::int64_t> k, Order order) {
  const DeltaVector dv = delta_vector(m, k);
  const Corrections c = symmetrized_corrections(m, dv.delta, dv.delta_last);
  const double ratio = std::exp(log_pmf(m, k) - log_base(m, dv.delta));
  return ratio - truncated_bracket(c, m.trials(), order);
}

LatticeBox bulk_box(const ModelParams& m, double eta) {
  require_eta(eta);
  const double n = static_cast<double>(m.trials());
  const double reach = eta * std::cbrt(n * n);
  LatticeBox box;
  for (int i = 0; i < m.dim(); ++i) {
    const double centre = n * m.p(i);
    box.lo.push_back(static_cast<std::int64_t>(std::max(0.0, std::floor(centre - reach * m.p(i)))));
    box.hi.push_back(static_cast<std::int64_t>(std::min(n, std::ceil(centre + reach * m.p(i)))));
  }
  return box;
}

double max_bulk_ratio_error(const ModelParams& m, double eta, Order order, unsigned threads) {
  const double worst = lattice_max(
      bulk_box(m, eta), m.trials(),
      [&](const LatticePoint& k) {
        return in_bulk(m, k, eta) ? std::fabs(ratio_error(m, k, order)) : 0.0;
      },
      threads);
  return std::max(worst, 0.0);
}

}  // namespace mllt
