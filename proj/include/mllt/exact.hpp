#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <cstdint>
#include <span>
#include <vector>

#include "mllt/model.hpp"
#include "mllt/parallel.hpp"
#include "mllt/summation.hpp"

namespace mllt {

/// Largest lattice any enumeration is allowed to visit.
inline constexpr std::uint64_t kEnumerationLimit = 1'000'000'000ULL;

/// C(N + d, d), saturating at UINT64_MAX.
std::uint64_t simplex_count(int d, std::int64_t trials);

/// Throws TooLarge when a lattice of `count` points exceeds kEnumerationLimit.
void require_enumerable(std::uint64_t count);

/// log p_N(k) via log-gamma.
double log_pmf(const ModelParams& m, std::span<const std::int64_t> k);

/// log(n!) computed with a reentrant log-gamma.
double log_factorial(std::int64_t n);

/// Inclusive coordinate bounds. Enumeration visits lo <= k <= hi with |k| <= N.
struct LatticeBox {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
};

LatticeBox simplex_box(int d, std::int64_t trials);

/// Number of points of `box` inside the simplex, or an upper bound on it.
std::uint64_t box_count_bound(const LatticeBox& box, std::int64_t trials);

/// Colexicographic stream over the points of a box inside the simplex
/// (first coordinate varies fastest).
class LatticeCursor {
 public:
  LatticeCursor(LatticeBox box, std::int64_t trials);

  bool done() const noexcept { return done_; }
  const LatticePoint& point() const noexcept { return k_; }
  void advance();

 private:
  LatticeBox box_;
  std::int64_t trials_;
  LatticePoint k_;
  std::int64_t sum_ = 0;
  bool done_ = false;
};

/// Every k with |k| <= N in colexicographic order; count C(N+d, d).
std::vector<LatticePoint> enumerate_simplex(int d, std::int64_t trials);

template <class Fn>
void for_each_lattice_point(const LatticeBox& box, std::int64_t trials, Fn&& fn) {
  for (LatticeCursor c(box, trials); !c.done(); c.advance()) fn(c.point());
}

namespace detail {

// Slabs of fixed last coordinate, grouped into chunks whose layout depends only
// on the box. Each chunk is summed in colex order, then chunks are combined in
// order, so the result is independent of the worker count.
struct SlabPlan {
  std::int64_t first = 0;
  std::int64_t last = -1;
  std::int64_t per_chunk = 1;
  std::size_t chunks() const {
    return last < first ? 0 : static_cast<std::size_t>((last - first) / per_chunk + 1);
  }
};

SlabPlan plan_slabs(const LatticeBox& box, std::int64_t trials);

}  // namespace detail

/// Fixed-tree compensated reduction of fn(k) (an array of K doubles) over a
/// box clipped to the simplex.
template <std::size_t K, class Fn>
std::array<double, K> lattice_sums(const LatticeBox& box, std::int64_t trials, Fn&& fn,
                                   unsigned threads = 1) {
  require_enumerable(box_count_bound(box, trials));
  const detail::SlabPlan plan = detail::plan_slabs(box, trials);
  const std::size_t chunks = plan.chunks();
  std::vector<std::array<double, K>> partial(chunks);
  run_chunks(chunks, threads, [&](std::size_t c) {
    LatticeBox slab = box;
    const std::size_t last = slab.lo.size() - 1;
    slab.lo[last] = plan.first + static_cast<std::int64_t>(c) * plan.per_chunk;
    slab.hi[last] = std::min(plan.last, slab.lo[last] + plan.per_chunk - 1);
    std::array<CompensatedSum, K> acc{};
    for (LatticeCursor cur(slab, trials); !cur.done(); cur.advance()) {
      const std::array<double, K> v = fn(cur.point());
      for (std::size_t j = 0; j < K; ++j) acc[j] += v[j];
    }
    for (std::size_t j = 0; j < K; ++j) partial[c][j] = acc[j].value();
  });
  std::array<CompensatedSum, K> total{};
  for (const auto& part : partial)
    for (std::size_t j = 0; j < K; ++j) total[j] += part[j];
  std::array<double, K> out{};
  for (std::size_t j = 0; j < K; ++j) out[j] = total[j].value();
  return out;
}

template <class Fn>
double lattice_sum(const LatticeBox& box, std::int64_t trials, Fn&& fn, unsigned threads = 1) {
  return lattice_sums<1>(
      box, trials, [&](const LatticePoint& k) { return std::array<double, 1>{fn(k)}; },
      threads)[0];
}

/// Largest fn(k) over a box clipped to the simplex; -inf when empty. Exact
/// maxima do not depend on evaluation order, so any worker count agrees.
template <class Fn>
double lattice_max(const LatticeBox& box, std::int64_t trials, Fn&& fn, unsigned threads = 1) {
  require_enumerable(box_count_bound(box, trials));
  const detail::SlabPlan plan = detail::plan_slabs(box, trials);
  const std::size_t chunks = plan.chunks();
  std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
  run_chunks(chunks, threads, [&](std::size_t c) {
    LatticeBox slab = box;
    const std::size_t last = slab.lo.size() - 1;
    slab.lo[last] = plan.first + static_cast<std::int64_t>(c) * plan.per_chunk;
    slab.hi[last] = std::min(plan.last, slab.lo[last] + plan.per_chunk - 1);
    double best = -std::numeric_limits<double>::infinity();
    for (LatticeCursor cur(slab, trials); !cur.done(); cur.advance()) best = std::max(best, fn(cur.point()));
    partial[c] = best;
  });
  double best = -std::numeric_limits<double>::infinity();
  for (double v : partial) best = std::max(best, v);
  return best;
}

/// Sum over k of p_N(k) * prod_i (k_i - N p_i)^{a_i} by full enumeration.
double central_moment_exact(const ModelParams& m, std::span<const int> a, unsigned threads = 1);

/// E[prod_i xi_i^{(a_i)}] = N^{(|a|)} prod_i p_i^{a_i}; zero once |a| > N.
double factorial_moment(const ModelParams& m, std::span<const int> a);

}  // namespace mllt
