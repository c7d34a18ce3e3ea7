#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mllt::cli {

/// Exit codes of the front-end.
inline constexpr int kOk = 0;
inline constexpr int kArgs = 2;
inline constexpr int kTooLarge = 3;
inline constexpr int kNumeric = 4;

/// "start:end:xF" (geometric), "start:end:+S" (arithmetic) or a comma list.
/// Throws std::invalid_argument unless the result is nonempty, positive and
/// strictly increasing.
std::vector<std::int64_t> parse_sweep(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_reals(const std::string& text);

/// Runs one invocation. Results go to --out (default stdout), errors to
/// stderr as a JSON object. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace mllt::cli
