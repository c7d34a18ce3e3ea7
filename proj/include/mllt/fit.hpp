#pragma once

#include <span>

namespace mllt {

/// Least-squares slope of log(y) against log(x). Throws InvalidArgument for
/// fewer than two points or non-positive entries.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace mllt
