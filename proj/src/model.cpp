#include "mllt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mllt/error.hpp"
#include "mllt/summation.hpp"

namespace mllt {

ModelParams ModelParams::create(std::vector<double> p, std::int64_t trials) {
  if (p.empty()) throw Error(ErrorCode::NonProbability, "probability vector is empty");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]) || !(p[i] > 0.0 && p[i] < 1.0))
      throw Error(ErrorCode::NonProbability,
                  "p[" + std::to_string(i) + "] = " + std::to_string(p[i]) + " is not in (0,1)");
  }
  CompensatedSum total;
  for (double pi : p) total += pi;
  const double q = 1.0 - total.value();
  if (!(q > 0.0))
    throw Error(ErrorCode::MassOverflow,
                "sum of p is " + std::to_string(total.value()) + ", must be < 1");
  if (trials < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
  return ModelParams(std::move(p), q, trials);
}

ModelParams new_model(std::vector<double> p, std::int64_t trials) {
  return ModelParams::create(std::move(p), trials);
}

double ModelParams::min_category() const noexcept {
  return std::min(q_, *std::min_element(p_.begin(), p_.end()));
}

double ModelParams::max_category() const noexcept {
  return std::max(q_, *std::max_element(p_.begin(), p_.end()));
}

ModelParams ModelParams::with_trials(std::int64_t trials) const {
  if (trials < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
  return ModelParams(p_, q_, trials);
}

CovarianceSpec covariance(const ModelParams& m) {
  CovarianceSpec c;
  const int d = m.dim();
  c.d = d;
  c.sigma.resize(static_cast<std::size_t>(d * d));
  c.sigma_inv.resize(static_cast<std::size_t>(d * d));
  double det = m.q();
  for (int i = 0; i < d; ++i) {
    det *= m.p(i);
    for (int j = 0; j < d; ++j) {
      const std::size_t at = static_cast<std::size_t>(i * d + j);
      c.sigma[at] = (i == j ? m.p(i) : 0.0) - m.p(i) * m.p(j);
      c.sigma_inv[at] = (i == j ? 1.0 / m.p(i) : 0.0) + 1.0 / m.q();
    }
  }
  c.det = det;
  return c;
}

void require_in_simplex(const ModelParams& m, std::span<const std::int64_t> k) {
  if (static_cast<int>(k.size()) != m.dim())
    throw Error(ErrorCode::OutOfSimplex, "lattice point has " + std::to_string(k.size()) +
                                             " coordinates, model has d = " +
                                             std::to_string(m.dim()));
  std::int64_t total = 0;
  for (std::int64_t ki : k) {
    if (ki < 0) throw Error(ErrorCode::OutOfSimplex, "negative count");
    if (ki > m.trials()) throw Error(ErrorCode::OutOfSimplex, "count exceeds N");
    total += ki;
  }
  if (total > m.trials()) throw Error(ErrorCode::OutOfSimplex, "sum of counts exceeds N");
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::Eta, "eta must lie in (0,1)");
}

DeltaVector delta_vector(const ModelParams& m, std::span<const std::int64_t> k) {
  require_in_simplex(m, k);
  const double n = static_cast<double>(m.trials());
  const double root_n = std::sqrt(n);
  DeltaVector out;
  out.delta.resize(k.size());
  double running = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out.delta[i] = (static_cast<double>(k[i]) - n * m.p(static_cast<int>(i))) / root_n;
    running += out.delta[i];
  }
  out.delta_last = -running;
  return out;
}

std::vector<double> normalized_deviation(const ModelParams& m, std::span<const double> x) {
  const double n = static_cast<double>(m.trials());
  const double root_n = std::sqrt(n);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = (x[i] - n * m.p(static_cast<int>(i))) / root_n;
  return out;
}

bool in_bulk(const ModelParams& m, std::span<const std::int64_t> k, double eta) {
  require_eta(eta);
  const DeltaVector dv = delta_vector(m, k);
  const double root_n = std::sqrt(static_cast<double>(m.trials()));
  const double limit = eta * std::pow(static_cast<double>(m.trials()), -1.0 / 3.0);
  for (int i = 0; i < m.dim(); ++i) {
    if (std::fabs(dv.delta[static_cast<std::size_t>(i)] / (root_n * m.p(i))) > limit) return false;
  }
  return std::fabs(dv.delta_last / (root_n * m.q())) <= limit;
}

double gaussian_density(const CovarianceSpec& c, std::span<const double> x) {
  double quad = 0.0;
  for (int i = 0; i < c.d; ++i)
    for (int j = 0; j < c.d; ++j)
      quad += x[static_cast<std::size_t>(i)] * c.inv(i, j) * x[static_cast<std::size_t>(j)];
  const double norm = std::pow(2.0 * std::numbers::pi, c.d) * c.det;
  return std::exp(-0.5 * quad) / std::sqrt(norm);
}

double log_gaussian_density(const ModelParams& m, std::span<const double> x) {
  double quad = 0.0;
  double total = 0.0;
  double log_det = std::log(m.q());
  for (int i = 0; i < m.dim(); ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    quad += xi * xi / m.p(i);
    total += xi;
    log_det += std::log(m.p(i));
  }
  quad += total * total / m.q();
  return -0.5 * quad - 0.5 * (m.dim() * std::log(2.0 * std::numbers::pi) + log_det);
}

}  // namespace mllt
