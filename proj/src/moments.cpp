#include "mllt/moments.hpp"

#include <cmath>

#include "mllt/error.hpp"

namespace mllt {

std::string_view to_string(RemainderOrder order) {
  switch (order) {
    case RemainderOrder::exact: return "exact";
    case RemainderOrder::order_n: return "O(N)";
    case RemainderOrder::order_n2: return "O(N^2)";
  }
  return "?";
}

namespace {

void require_index(const ModelParams& m, int idx) {
  if (idx < 0 || idx >= m.dim()) throw Error(ErrorCode::Index, "moment index out of range");
}

}  // namespace

ClosedFormMoment closed_form_central_moment(const ModelParams& m, const MomentSpec& s) {
  const double n = static_cast<double>(m.trials());
  const auto eq = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  switch (s.kind) {
    case MomentKind::mean:
      require_index(m, s.i);
      return {0.0, RemainderOrder::exact};
    case MomentKind::cov: {
      require_index(m, s.i);
      require_index(m, s.j);
      const double pi = m.p(s.i), pj = m.p(s.j);
      return {n * (pi * eq(s.i, s.j) - pi * pj), RemainderOrder::exact};
    }
    case MomentKind::third: {
      require_index(m, s.i);
      require_index(m, s.j);
      require_index(m, s.l);
      const double pi = m.p(s.i), pj = m.p(s.j), pl = m.p(s.l);
      const double v = 2.0 * pi * pj * pl - eq(s.i, s.j) * pi * pl - eq(s.j, s.l) * pi * pj -
                       eq(s.i, s.l) * pj * pl + eq(s.i, s.j) * eq(s.j, s.l) * pi;
      return {n * v, RemainderOrder::exact};
    }
    case MomentKind::fourth: {
      require_index(m, s.i);
      const double v = m.p(s.i) * (1.0 - m.p(s.i));
      return {3.0 * n * n * v * v, RemainderOrder::order_n};
    }
    case MomentKind::sixth: {
      require_index(m, s.i);
      const double v = m.p(s.i) * (1.0 - m.p(s.i));
      return {15.0 * n * n * n * v * v * v, RemainderOrder::order_n2};
    }
    case MomentKind::mixed33: {
      require_index(m, s.i);
      require_index(m, s.j);
      if (s.i == s.j) throw Error(ErrorCode::Index, "mixed moment needs two distinct indices");
      const double pp = m.p(s.i) * m.p(s.j), ps = m.p(s.i) + m.p(s.j);
      return {n * n * n * pp * pp * (-9.0 + 9.0 * ps - 15.0 * pp), RemainderOrder::order_n2};
    }
  }
  throw Error(ErrorCode::Index, "unknown moment kind");
}

double restricted_moment_bound(const ModelParams& m, RestrictedKind kind, double P) {
  if (!(P >= 0.0 && P <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "complement probability must lie in [0, 1]");
  const double n = static_cast<double>(m.trials());
  switch (kind) {
    case RestrictedKind::first: return 0.5 * std::sqrt(n) * std::sqrt(P);
    case RestrictedKind::second: return 0.5 * n * std::sqrt(P);
    case RestrictedKind::third: return n * std::sqrt(n) * std::sqrt(std::sqrt(P)) / std::sqrt(8.0);
  }
  return 0.0;
}

}  // namespace mllt
