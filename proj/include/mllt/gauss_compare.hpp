#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mllt/model.hpp"

namespace mllt {

/// Law of X = K + U: K multinomial, U uniform on (-1/2, 1/2)^d. Its density
/// is p_N(k) on the unit cube centred at each lattice point k.
class SmoothedLaw {
 public:
  explicit SmoothedLaw(ModelParams m) : m_(std::move(m)) {}

  const ModelParams& model() const noexcept { return m_; }

  /// Density at x in count coordinates; 0 off the cube union.
  double density(std::span<const double> x) const;

  /// Sum of cell masses (1 up to rounding).
  double total_mass(unsigned threads = 1) const;

 private:
  ModelParams m_;
};

struct TVReport {
  double tv = 0.0;
  double cell_contribution = 0.0;  // sum over cells of the integral of |p_N - Gaussian|
  double outside_mass = 0.0;       // Gaussian mass off the evaluated cells
  std::uint64_t cells_evaluated = 0;
  double truncation_bound = 0.0;   // bound on the error from cells outside the window
};

/// Total variation between the smoothed law and Normal(Np, N Sigma).
/// Cells within 10 marginal standard deviations are integrated: the leading
/// d-1 axes by tensor Gauss-Legendre with `nodes_per_axis` points, the last
/// axis exactly. Cells outside the window count as disjoint mass.
/// Throws InvalidArgument if nodes_per_axis < 4, TooLarge past the guard.
TVReport tv_distance_numeric(const ModelParams& m, int nodes_per_axis = 12, unsigned threads = 1);

struct HellingerTail {
  double tail_term = 0.0;  // 2 P(X in complement of the bulk), conservative
  double cap = 0.0;        // 100 d exp(-min(p,q)^2 N^{1/3} / (100 d^2))
  bool bound_valid = false;
};

/// Counts every cell that touches the bulk complement. Throws Eta.
HellingerTail hellinger_upper_bound_terms(const ModelParams& m, double eta, unsigned threads = 1);

struct TailMass {
  double exact_mass = 0.0;    // P(K outside the bulk)
  double in_bulk_mass = 0.0;  // P(K inside the bulk)
  double azuma_bound = 0.0;   // sum over d+1 categories of 2 exp(-eta^2 p_i^2 N^{1/3} / 2)
};

TailMass tail_mass_outside_bulk(const ModelParams& m, double eta, unsigned threads = 1);

/// Smallest N of the doubling grid n_lo, 2 n_lo, ... <= n_hi from which the
/// cap holds at every later grid point; 0 if it never does.
std::int64_t empirical_cap_threshold(std::vector<double> p, double eta, std::int64_t n_lo,
                                     std::int64_t n_hi, unsigned threads = 1);

/// x = k + noise. Throws OutOfSimplex for infeasible k and InvalidArgument
/// unless every noise entry lies in (-1/2, 1/2).
std::vector<double> kernel_t1(const ModelParams& m, std::span<const std::int64_t> k,
                              std::span<const double> noise);

/// Round half away from zero, clamp to [0, N], then while |k| > N decrement
/// the largest entry (lowest index on ties). Throws InvalidArgument for
/// non-finite y or wrong length.
LatticePoint kernel_t2(const ModelParams& m, std::span<const double> y);

}  // namespace mllt
