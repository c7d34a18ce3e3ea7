#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mllt {

/// Counts k_1..k_d of the first d categories; the remainder N - |k| is implicit.
using LatticePoint = std::vector<std::int64_t>;

/// Multinomial(N, p) with d free categories and remainder mass q = 1 - |p|.
/// Immutable once built; q is always derived from p.
class ModelParams {
 public:
  /// Validates p and N. Throws Error with NonProbability, MassOverflow or
  /// ZeroTrials.
  static ModelParams create(std::vector<double> p, std::int64_t trials);

  int dim() const noexcept { return static_cast<int>(p_.size()); }
  std::span<const double> p() const noexcept { return p_; }
  double p(int i) const { return p_[static_cast<std::size_t>(i)]; }
  double q() const noexcept { return q_; }
  std::int64_t trials() const noexcept { return trials_; }

  /// Probability of category i in [0, d]; index d is the remainder q.
  double category(int i) const { return i == dim() ? q_ : p(i); }

  double min_category() const noexcept;
  double max_category() const noexcept;

  /// Same probabilities, different trial count.
  ModelParams with_trials(std::int64_t trials) const;

 private:
  ModelParams(std::vector<double> p, double q, std::int64_t trials)
      : p_(std::move(p)), q_(q), trials_(trials) {}

  std::vector<double> p_;
  double q_;
  std::int64_t trials_;
};

ModelParams new_model(std::vector<double> p, std::int64_t trials);

/// Limiting covariance Sigma = diag(p) - p p^T with its closed-form inverse
/// and determinant. Matrices are d x d, row-major.
struct CovarianceSpec {
  int d = 0;
  std::vector<double> sigma;
  std::vector<double> sigma_inv;
  double det = 0.0;

  double at(int i, int j) const { return sigma[static_cast<std::size_t>(i * d + j)]; }
  double inv(int i, int j) const { return sigma_inv[static_cast<std::size_t>(i * d + j)]; }
};

CovarianceSpec covariance(const ModelParams& m);

/// delta_i = (k_i - N p_i) / sqrt(N); delta_last = -sum_i delta_i.
struct DeltaVector {
  std::vector<double> delta;
  double delta_last = 0.0;
};

DeltaVector delta_vector(const ModelParams& m, std::span<const std::int64_t> k);

/// Real-valued deviation (x - N p) / sqrt(N), for cell boundaries and T1 output.
std::vector<double> normalized_deviation(const ModelParams& m, std::span<const double> x);

/// Membership in B_{N,p}(eta). Throws Eta unless 0 < eta < 1.
bool in_bulk(const ModelParams& m, std::span<const std::int64_t> k, double eta);

/// phi_Sigma(x). Uses x^T Sigma^{-1} x = sum x_i^2/p_i + (sum x_i)^2/q.
double gaussian_density(const CovarianceSpec& c, std::span<const double> x);

/// log phi_Sigma for the model's Sigma, evaluated without forming matrices.
double log_gaussian_density(const ModelParams& m, std::span<const double> x);

/// Throws OutOfSimplex unless k has dim() entries, k_i >= 0 and |k| <= N.
void require_in_simplex(const ModelParams& m, std::span<const std::int64_t> k);

void require_eta(double eta);

}  // namespace mllt
