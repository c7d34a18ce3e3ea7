#include "mllt/exact_rational.hpp"

#include "mllt/error.hpp"

namespace mllt {

namespace {

mpq_class power(const mpq_class& base, std::int64_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

RationalParams RationalParams::create(std::vector<mpq_class> p, std::int64_t trials) {
  if (p.empty()) throw Error(ErrorCode::NonProbability, "probability vector is empty");
  mpq_class total = 0;
  for (auto& pi : p) {
    pi.canonicalize();
    if (pi <= 0 || pi >= 1) throw Error(ErrorCode::NonProbability, "p_i must lie in (0,1)");
    total += pi;
  }
  if (total >= 1) throw Error(ErrorCode::MassOverflow, "sum of p must be < 1");
  if (trials < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
  return RationalParams{std::move(p), trials};
}

mpq_class RationalParams::q() const {
  mpq_class rest = 1;
  for (const auto& pi : p) rest -= pi;
  return rest;
}

mpq_class pmf_exact_rational(const RationalParams& r, std::span<const std::int64_t> k) {
  if (k.size() != r.p.size()) throw Error(ErrorCode::OutOfSimplex, "dimension mismatch");
  std::int64_t remaining = r.trials;
  mpz_class coefficient = 1;
  mpq_class weight = 1;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0 || k[i] > remaining)
      throw Error(ErrorCode::OutOfSimplex, "lattice point outside the simplex");
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(remaining),
                 static_cast<unsigned long>(k[i]));
    coefficient *= binom;
    weight *= power(r.p[i], k[i]);
    remaining -= k[i];
  }
  weight *= power(r.q(), remaining);
  mpq_class out = mpq_class(coefficient) * weight;
  out.canonicalize();
  return out;
}

}  // namespace mllt
