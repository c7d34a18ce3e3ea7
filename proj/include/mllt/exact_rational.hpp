#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace mllt {

/// Exact-arithmetic mirror of ModelParams, used as a test oracle.
struct RationalParams {
  std::vector<mpq_class> p;
  std::int64_t trials = 0;

  /// Throws NonProbability / MassOverflow / ZeroTrials like ModelParams.
  static RationalParams create(std::vector<mpq_class> p, std::int64_t trials);

  mpq_class q() const;
};

/// Exact p_N(k): integer multinomial coefficient times exact rational powers.
mpq_class pmf_exact_rational(const RationalParams& r, std::span<const std::int64_t> k);

}  // namespace mllt
