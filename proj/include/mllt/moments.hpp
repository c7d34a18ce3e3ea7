#pragma once

#include <string_view>

#include "mllt/model.hpp"

namespace mllt {

enum class MomentKind { mean, cov, third, fourth, sixth, mixed33 };

/// Which central moment of xi - Np. Indices are 0-based category indices
/// below d; unused ones are ignored.
struct MomentSpec {
  MomentKind kind = MomentKind::mean;
  int i = 0;
  int j = 0;
  int l = 0;
};

/// Power of N bounding leading - exact: none (exact), O(N) or O(N^2).
enum class RemainderOrder { exact, order_n, order_n2 };

std::string_view to_string(RemainderOrder order);

struct ClosedFormMoment {
  double leading = 0.0;
  RemainderOrder remainder = RemainderOrder::exact;
};

/// Closed forms: mean, covariance and third moments are exact; the fourth,
/// sixth and mixed (3,3) moments are leading terms. Throws Index on bad
/// indices (mixed33 needs i != j).
ClosedFormMoment closed_form_central_moment(const ModelParams& m, const MomentSpec& spec);

enum class RestrictedKind { first, second, third };

/// Bound on the change of a central moment of order 1, 2 or 3 when the
/// expectation is restricted to an event whose complement has probability
/// `prob_complement`: sqrt(N P)/2, N sqrt(P)/2, N^{3/2} P^{1/4}/sqrt(8).
/// Throws InvalidArgument unless prob_complement is in [0, 1].
double restricted_moment_bound(const ModelParams& m, RestrictedKind kind, double prob_complement);

}  // namespace mllt
