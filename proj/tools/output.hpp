#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mllt::cli {

/// Raised when a result cannot be printed as a finite number.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// 12 significant digits, "-0" folded to "0". Throws NumericFailure for
/// non-finite input.
std::string format_double(double v);

/// CSV with one header row, or a JSON array of row objects.
void write_table(std::ostream& out, const Table& table, Format format);

}  // namespace mllt::cli
