#include "mllt/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mllt/error.hpp"
#include "mllt/parallel.hpp"
#include "mllt/quadrature.hpp"
#include "mllt/summation.hpp"

namespace mllt {

Hypercube cell(const ModelParams& m, std::span<const std::int64_t> k) {
  require_in_simplex(m, k);
  const double n = static_cast<double>(m.trials());
  const double root = std::sqrt(n);
  Hypercube h;
  for (int i = 0; i < m.dim(); ++i) {
    const double ki = static_cast<double>(k[static_cast<std::size_t>(i)]);
    h.lo.push_back((ki - 0.5 - n * m.p(i)) / root);
    h.hi.push_back((ki + 0.5 - n * m.p(i)) / root);
  }
  return h;
}

namespace {

bool colex_less(const LatticePoint& a, const LatticePoint& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

constexpr std::size_t kPointChunk = 256;

// Sum of fn over the members of A inside the simplex, with a reduction tree
// that does not depend on the worker count.
template <class Fn>
double region_sum(const ModelParams& m, const Region& A, Fn&& fn, unsigned threads) {
  A.require_dim(m.dim());
  if (A.kind() != Region::Kind::points) {
    return lattice_sum(
        A.bounds(m.dim(), m.trials()), m.trials(),
        [&](const LatticePoint& k) { return A.contains(k) ? fn(k) : 0.0; }, threads);
  }
  const auto& pts = A.points();
  require_enumerable(pts.size());
  const std::size_t chunks = (pts.size() + kPointChunk - 1) / kPointChunk;
  std::vector<double> partial(chunks, 0.0);
  run_chunks(chunks, threads, [&](std::size_t c) {
    CompensatedSum acc;
    const std::size_t end = std::min(pts.size(), (c + 1) * kPointChunk);
    for (std::size_t i = c * kPointChunk; i < end; ++i) {
      std::int64_t used = 0;
      for (std::int64_t v : pts[i]) used += v;
      if (used <= m.trials()) acc += fn(pts[i]);
    }
    partial[c] = acc.value();
  });
  CompensatedSum total;
  for (double v : partial) total += v;
  return total.value();
}

}  // namespace

Region Region::from_points(std::vector<LatticePoint> points) {
  for (const auto& k : points)
    for (std::int64_t v : k)
      if (v < 0) throw Error(ErrorCode::OutOfSimplex, "region points must be nonnegative");
  std::sort(points.begin(), points.end(), colex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Region r;
  r.kind_ = Kind::points;
  r.points_ = std::move(points);
  return r;
}

Region Region::from_box(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw Error(ErrorCode::InvalidArgument, "box bounds must have equal nonzero length");
  Region r;
  r.kind_ = Kind::box;
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

Region Region::from_half_space(std::vector<double> a, double b) {
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "half-space normal must be nonempty");
  for (double v : a)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "half-space normal not finite");
  if (std::isnan(b)) throw Error(ErrorCode::InvalidArgument, "half-space offset is NaN");
  Region r;
  r.kind_ = Kind::half_space;
  r.a_ = std::move(a);
  r.b_ = b;
  return r;
}

Region Region::all() { return Region{}; }

void Region::require_dim(int d) const {
  const auto n = static_cast<std::size_t>(d);
  const bool ok = [&] {
    switch (kind_) {
      case Kind::points:
        return std::all_of(points_.begin(), points_.end(),
                           [&](const LatticePoint& k) { return k.size() == n; });
      case Kind::box: return lo_.size() == n;
      case Kind::half_space: return a_.size() == n;
      case Kind::all: return true;
    }
    return false;
  }();
  if (!ok) throw Error(ErrorCode::InvalidArgument, "region dimension does not match d");
}

bool Region::contains(std::span<const std::int64_t> k) const {
  switch (kind_) {
    case Kind::all: return true;
    case Kind::points: {
      const LatticePoint key(k.begin(), k.end());
      return std::binary_search(points_.begin(), points_.end(), key, colex_less);
    }
    case Kind::box:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] < lo_[i] || k[i] > hi_[i]) return false;
      return true;
    case Kind::half_space: {
      CompensatedSum dot;
      for (std::size_t i = 0; i < k.size(); ++i) dot += a_[i] * static_cast<double>(k[i]);
      return dot.value() <= b_;
    }
  }
  return false;
}

LatticeBox Region::bounds(int d, std::int64_t trials) const {
  LatticeBox box = simplex_box(d, trials);
  if (kind_ == Kind::box) {
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
      box.lo[i] = std::max(box.lo[i], lo_[i]);
      box.hi[i] = std::min(box.hi[i], hi_[i]);
    }
  } else if (kind_ == Kind::points) {
    if (points_.empty()) {
      std::fill(box.lo.begin(), box.lo.end(), 1);
      std::fill(box.hi.begin(), box.hi.end(), 0);
      return box;
    }
    box.lo = points_.front();
    box.hi = points_.front();
    for (const auto& k : points_)
      for (std::size_t i = 0; i < k.size(); ++i) {
        box.lo[i] = std::min(box.lo[i], k[i]);
        box.hi[i] = std::max(box.hi[i], k[i]);
      }
  }
  return box;
}

double gauss_monomial_integral(const CovarianceSpec& c, std::span<const double> lo,
                               std::span<const double> hi, std::span<const int> alpha,
                               int nodes) {
  const auto d = static_cast<std::size_t>(c.d);
  if (alpha.size() != d || lo.size() != d || hi.size() != d)
    throw Error(ErrorCode::InvalidArgument, "box and multi-index must have length d");
  int degree = 0;
  for (int a : alpha) {
    if (a < 0) throw Error(ErrorCode::Degree, "multi-index entries must be nonnegative");
    degree += a;
  }
  if (degree > 6) throw Error(ErrorCode::Degree, "monomial degree exceeds 6");
  for (std::size_t i = 0; i < d; ++i)
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw Error(ErrorCode::InvalidArgument, "integration box must be finite");
  if (nodes < 1) throw Error(ErrorCode::InvalidArgument, "nodes must be >= 1");
  std::vector<double> width(d);
  for (std::size_t i = 0; i < d; ++i) width[i] = std::sqrt(c.at(static_cast<int>(i), static_cast<int>(i)));
  const GaussLegendreRule rule = gauss_legendre(nodes);
  return composite_tensor_integrate(lo, hi, width, rule, [&](std::span<const double> y) {
    double v = gaussian_density(c, y);
    for (std::size_t i = 0; i < d; ++i)
      for (int r = 0; r < alpha[i]; ++r) v *= y[i];
    return v;
  });
}

double region_integrand(const ModelParams& m, std::span<const double> y, Order order) {
  const double phi = std::exp(log_gaussian_density(m, y));
  if (order == Order::zero) return phi;
  const Corrections c = corrections_at(m, y);
  const double n = static_cast<double>(m.trials());
  double bracket = 1.0 + c.c_half / std::sqrt(n);
  if (order == Order::one) {
    double s = 0.0;
    for (double v : y) s += v;
    const double q = m.q();
    CompensatedSum midpoint;
    for (int i = 0; i < m.dim(); ++i) {
      const double w = y[static_cast<std::size_t>(i)] / m.p(i) + s / q;
      midpoint += w * w - (1.0 / m.p(i) + 1.0 / q);
    }
    bracket += (c.c_one - midpoint.value() / 24.0) / n;
  }
  return phi * bracket;
}

double region_prob_exact(const ModelParams& m, const Region& A, unsigned threads) {
  return region_sum(
      m, A, [&](const LatticePoint& k) { return std::exp(log_pmf(m, k)); }, threads);
}

double region_prob_approx(const ModelParams& m, const Region& A, Order order, int nodes,
                          unsigned threads) {
  if (nodes < 1) throw Error(ErrorCode::InvalidArgument, "nodes must be >= 1");
  const GaussLegendreRule rule = gauss_legendre(nodes);
  return region_sum(
      m, A,
      [&](const LatticePoint& k) {
        const Hypercube h = cell(m, k);
        return tensor_integrate(std::span<const double>(h.lo), std::span<const double>(h.hi),
                                rule, [&](std::span<const double> y) {
                                  return region_integrand(m, y, order);
                                });
      },
      threads);
}

double leading_set_approx(const ModelParams& m, const ContinuousRegion& A, int nodes) {
  const int d = m.dim();
  const auto du = static_cast<std::size_t>(d);
  const double n = static_cast<double>(m.trials());
  const double root = std::sqrt(n);
  switch (A.kind) {
    case ContinuousRegion::Kind::all: return 1.0;
    case ContinuousRegion::Kind::points:
      throw Error(ErrorCode::UnsupportedRegion, "point sets have no Gaussian counterpart");
    case ContinuousRegion::Kind::half_space: {
      if (A.a.size() != du) throw Error(ErrorCode::InvalidArgument, "normal must have length d");
      CompensatedSum ap, a2p;
      for (int i = 0; i < d; ++i) {
        const double ai = A.a[static_cast<std::size_t>(i)];
        ap += ai * m.p(i);
        a2p += ai * ai * m.p(i);
      }
      const double var = a2p.value() - ap.value() * ap.value();
      const double t = (A.b - n * ap.value()) / root;
      if (!(var > 0.0)) return t >= 0.0 ? 1.0 : 0.0;
      return normal_cdf(t / std::sqrt(var));
    }
    case ContinuousRegion::Kind::box: break;
  }
  if (A.lo.size() != du || A.hi.size() != du)
    throw Error(ErrorCode::InvalidArgument, "box bounds must have length d");
  if (nodes < 1) throw Error(ErrorCode::InvalidArgument, "nodes must be >= 1");
  const CovarianceSpec cov = covariance(m);
  std::vector<double> lo(du), hi(du), sd(du);
  for (std::size_t i = 0; i < du; ++i) {
    lo[i] = (A.lo[i] - n * m.p(static_cast<int>(i))) / root;
    hi[i] = (A.hi[i] - n * m.p(static_cast<int>(i))) / root;
    sd[i] = std::sqrt(cov.at(static_cast<int>(i), static_cast<int>(i)));
    if (!(hi[i] > lo[i])) return 0.0;
  }
  if (d == 1) return normal_interval(lo[0] / sd[0], hi[0] / sd[0]);

  // Outer axes by composite quadrature clipped at +-10 sd, the last axis in
  // closed form from the conditional Gaussian slice.
  const GaussianSlices slices(std::vector<double>(du, 0.0), cov.sigma_inv,
                              -0.5 * (d * std::log(2.0 * std::numbers::pi) + std::log(cov.det)));
  const std::size_t outer = du - 1;
  std::vector<double> olo(outer), ohi(outer), width(outer);
  for (std::size_t i = 0; i < outer; ++i) {
    olo[i] = std::max(lo[i], -10.0 * sd[i]);
    ohi[i] = std::min(hi[i], 10.0 * sd[i]);
    if (!(ohi[i] > olo[i])) return 0.0;
    width[i] = sd[i];
  }
  const GaussLegendreRule rule = gauss_legendre(nodes);
  const double value = composite_tensor_integrate(
      olo, ohi, width, rule, [&](std::span<const double> lead) {
        const GaussianSlices::Slice s = slices.slice(lead);
        return gaussian_bump_integral(s.log_scale, s.mu, s.s, lo[outer], hi[outer]);
      });
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace mllt
