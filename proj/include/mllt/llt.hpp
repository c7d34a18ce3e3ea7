#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "mllt/exact.hpp"
#include "mllt/model.hpp"

namespace mllt {

/// Truncation order of the local expansion: 1, 1 + N^{-1/2}c_half, or
/// 1 + N^{-1/2}c_half + N^{-1}c_one.
enum class Order { zero, half, one };

std::string_view to_string(Order order);
Order parse_order(std::string_view text);

enum class ExpansionForm { raw, symmetrized };

/// Correction coefficients of the two expansion orders at a deviation delta.
struct Corrections {
  double c_half = 0.0;
  double c_one = 0.0;
};

struct ExpansionTerms {
  double base = 0.0;  // N^{-d/2} phi_Sigma(delta_k)
  double c_half = 0.0;
  double c_one = 0.0;
  ExpansionForm form = ExpansionForm::raw;
};

/// Coefficients written as sums over d coordinates (quadruple sums for c_one).
/// O(d^4); kept for cross-validation.
Corrections raw_corrections(const ModelParams& m, std::span<const double> delta);

/// Coefficients written over all d+1 categories with delta_{d+1} = delta_last
/// and p_{d+1} = q. O(d).
Corrections symmetrized_corrections(const ModelParams& m, std::span<const double> delta,
                                    double delta_last);

/// Symmetrized coefficients at an arbitrary real deviation; delta_last is
/// taken as minus the running sum of delta.
Corrections corrections_at(const ModelParams& m, std::span<const double> delta);

ExpansionTerms expansion_terms(const ModelParams& m, std::span<const std::int64_t> k);
ExpansionTerms expansion_terms_symmetrized(const ModelParams& m, std::span<const std::int64_t> k);

/// 1, 1 + c_half/sqrt(N), or 1 + c_half/sqrt(N) + c_one/N.
double truncated_bracket(const Corrections& c, std::int64_t trials, Order order);

struct Approximation {
  double value = 0.0;
  bool clamped = false;  // the bracket went negative and the value was set to 0
};

Approximation approx_pmf(const ModelParams& m, std::span<const std::int64_t> k, Order order);

/// p_N(k) / base - bracket: the remainder the expansion leaves at this order.
double ratio_error(const ModelParams& m, std::span<const std::int64_t> k, Order order);

/// Box of k with |k_i - N p_i| <= eta p_i N^{2/3}; contains the bulk.
LatticeBox bulk_box(const ModelParams& m, double eta);

/// Largest |ratio_error| over the bulk. Throws Eta.
double max_bulk_ratio_error(const ModelParams& m, double eta, Order order, unsigned threads = 1);

/// log(N^{-d/2} phi_Sigma(delta)).
double log_base(const ModelParams& m, std::span<const double> delta);

}  // namespace mllt
