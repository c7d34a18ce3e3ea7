#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mllt/exact.hpp"
#include "mllt/llt.hpp"
#include "mllt/model.hpp"

namespace mllt {

/// Axis-aligned box in normalized deviation coordinates.
struct Hypercube {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// The normalized unit cell centred at delta_k, side N^{-1/2}.
Hypercube cell(const ModelParams& m, std::span<const std::int64_t> k);

/// Lattice subset described by an explicit point list, an inclusive integer
/// box, a half-space a.k <= b, or every lattice point.
class Region {
 public:
  enum class Kind { points, box, half_space, all };

  /// Duplicates are dropped; points are kept in colexicographic order.
  static Region from_points(std::vector<LatticePoint> points);
  static Region from_box(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi);
  static Region from_half_space(std::vector<double> a, double b);
  static Region all();

  Kind kind() const noexcept { return kind_; }
  bool contains(std::span<const std::int64_t> k) const;

  /// Enumeration box covering every member inside the simplex of width N.
  LatticeBox bounds(int d, std::int64_t trials) const;

  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  const std::vector<std::int64_t>& box_lo() const noexcept { return lo_; }
  const std::vector<std::int64_t>& box_hi() const noexcept { return hi_; }
  const std::vector<double>& normal() const noexcept { return a_; }
  double offset() const noexcept { return b_; }

  /// Throws OutOfSimplex/InvalidArgument when the descriptor does not fit d.
  void require_dim(int d) const;

 private:
  Kind kind_ = Kind::all;
  std::vector<LatticePoint> points_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<double> a_;
  double b_ = 0.0;
};

/// Integral of y^alpha phi_Sigma(y) over [lo, hi] by composite tensor
/// Gauss-Legendre: each axis is split into panels no wider than one marginal
/// standard deviation, `nodes` points per panel. Throws Degree if |alpha| > 6.
double gauss_monomial_integral(const CovarianceSpec& c, std::span<const double> lo,
                               std::span<const double> hi, std::span<const int> alpha,
                               int nodes = 12);

/// Sum of p_N(k) over members of A inside the simplex.
double region_prob_exact(const ModelParams& m, const Region& A, unsigned threads = 1);

/// Sum over member cells of the integral of phi_Sigma times the truncated
/// correction polynomial. The N^{-1} group carries the midpoint term
/// -(1/24) sum_i (([Sigma^{-1} y]_i)^2 - [Sigma^{-1}]_ii) evaluated at y.
double region_prob_approx(const ModelParams& m, const Region& A, Order order, int nodes = 12,
                          unsigned threads = 1);

/// Integrand of region_prob_approx at a point y of normalized coordinates.
double region_integrand(const ModelParams& m, std::span<const double> y, Order order);

/// Continuous set in count coordinates: a box with possibly infinite bounds,
/// a half-space a.x <= b, the whole space, or an explicit point set (which has
/// no Gaussian counterpart and is rejected).
struct ContinuousRegion {
  enum class Kind { box, half_space, all, points };
  Kind kind = Kind::all;
  std::vector<double> lo, hi;
  std::vector<double> a;
  double b = 0.0;
};

/// Gaussian probability of (A - Np)/sqrt(N). Half-spaces and the whole space
/// are closed form; boxes with d >= 2 are integrated slice by slice.
/// Throws UnsupportedRegion for point sets.
double leading_set_approx(const ModelParams& m, const ContinuousRegion& A, int nodes = 12);

}  // namespace mllt
