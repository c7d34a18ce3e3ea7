#include "mllt/exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mllt/error.hpp"

namespace mllt {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t simplex_count(int d, std::int64_t trials) {
  // C(N+d, d) built as a running product of exact binomials C(N+j, j).
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  u128 value = 1;
  for (int j = 1; j <= d; ++j) {
    value = value * static_cast<u128>(trials + j) / static_cast<unsigned>(j);
    if (value > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(value);
}

void require_enumerable(std::uint64_t count) {
  if (count > kEnumerationLimit)
    throw Error(ErrorCode::TooLarge, "lattice of " + std::to_string(count) +
                                         " points exceeds the enumeration limit of " +
                                         std::to_string(kEnumerationLimit));
}

double log_factorial(std::int64_t n) {
  int sign = 0;
  return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

double log_pmf(const ModelParams& m, std::span<const std::int64_t> k) {
  require_in_simplex(m, k);
  std::int64_t used = 0;
  double value = log_factorial(m.trials());
  for (int i = 0; i < m.dim(); ++i) {
    const std::int64_t ki = k[static_cast<std::size_t>(i)];
    used += ki;
    value -= log_factorial(ki);
    if (ki > 0) value += static_cast<double>(ki) * std::log(m.p(i));
  }
  const std::int64_t rest = m.trials() - used;
  value -= log_factorial(rest);
  if (rest > 0) value += static_cast<double>(rest) * std::log(m.q());
  return value;
}

LatticeBox simplex_box(int d, std::int64_t trials) {
  return LatticeBox{std::vector<std::int64_t>(static_cast<std::size_t>(d), 0),
                    std::vector<std::int64_t>(static_cast<std::size_t>(d), trials)};
}

std::uint64_t box_count_bound(const LatticeBox& box, std::int64_t trials) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  u128 product = 1;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    const std::int64_t width = box.hi[i] - box.lo[i] + 1;
    if (width <= 0) return 0;
    product *= static_cast<u128>(width);
    if (product > kMax) {
      product = kMax;
      break;
    }
  }
  return std::min(static_cast<std::uint64_t>(product),
                  simplex_count(static_cast<int>(box.lo.size()), trials));
}

LatticeCursor::LatticeCursor(LatticeBox box, std::int64_t trials)
    : box_(std::move(box)), trials_(trials), k_(box_.lo) {
  for (std::size_t i = 0; i < box_.lo.size(); ++i) {
    box_.lo[i] = std::max<std::int64_t>(box_.lo[i], 0);
    box_.hi[i] = std::min(box_.hi[i], trials_);
    if (box_.hi[i] < box_.lo[i]) done_ = true;
  }
  k_ = box_.lo;
  for (std::int64_t v : k_) sum_ += v;
  if (box_.lo.empty() || sum_ > trials_) done_ = true;
}

void LatticeCursor::advance() {
  if (done_) return;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (k_[i] < box_.hi[i] && sum_ < trials_) {
      ++k_[i];
      ++sum_;
      return;
    }
    // Reset this coordinate and carry into the next one.
    sum_ -= k_[i] - box_.lo[i];
    k_[i] = box_.lo[i];
  }
  done_ = true;
}

std::vector<LatticePoint> enumerate_simplex(int d, std::int64_t trials) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  if (trials < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
  const std::uint64_t count = simplex_count(d, trials);
  require_enumerable(count);
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_lattice_point(simplex_box(d, trials), trials,
                         [&](const LatticePoint& k) { out.push_back(k); });
  return out;
}

namespace detail {

SlabPlan plan_slabs(const LatticeBox& box, std::int64_t trials) {
  SlabPlan plan;
  if (box.lo.empty()) return plan;
  const std::size_t last = box.lo.size() - 1;
  std::int64_t others = 0;
  for (std::size_t i = 0; i < last; ++i) others += std::max<std::int64_t>(box.lo[i], 0);
  plan.first = std::max<std::int64_t>(box.lo[last], 0);
  plan.last = std::min(box.hi[last], trials - others);
  // One-dimensional slabs are single points; batch them.
  plan.per_chunk = last == 0 ? 1024 : 1;
  return plan;
}

}  // namespace detail

double central_moment_exact(const ModelParams& m, std::span<const int> a, unsigned threads) {
  if (static_cast<int>(a.size()) != m.dim())
    throw Error(ErrorCode::Index, "multi-index length must equal d");
  const std::vector<int> powers(a.begin(), a.end());
  const double n = static_cast<double>(m.trials());
  return lattice_sum(
      simplex_box(m.dim(), m.trials()), m.trials(),
      [&](const LatticePoint& k) {
        double term = std::exp(log_pmf(m, k));
        for (int i = 0; i < m.dim(); ++i) {
          const double dev = static_cast<double>(k[static_cast<std::size_t>(i)]) - n * m.p(i);
          for (int r = 0; r < powers[static_cast<std::size_t>(i)]; ++r) term *= dev;
        }
        return term;
      },
      threads);
}

double factorial_moment(const ModelParams& m, std::span<const int> a) {
  if (static_cast<int>(a.size()) != m.dim())
    throw Error(ErrorCode::Index, "multi-index length must equal d");
  std::int64_t order = 0;
  double value = 1.0;
  for (int i = 0; i < m.dim(); ++i) {
    const int ai = a[static_cast<std::size_t>(i)];
    if (ai < 0) throw Error(ErrorCode::Index, "multi-index entries must be nonnegative");
    order += ai;
    value *= std::pow(m.p(i), ai);
  }
  if (order > m.trials()) return 0.0;
  for (std::int64_t r = 0; r < order; ++r) value *= static_cast<double>(m.trials() - r);
  return value;
}

}  // namespace mllt
