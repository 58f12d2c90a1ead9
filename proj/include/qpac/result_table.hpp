#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qpac {

// Empty, integer, real or text cell.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

// CSV table: line 1 is "# " + compact JSON header, line 2 the column names.
struct ResultTable {
  nlohmann::json header;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws std::invalid_argument when the width differs from columns.
  void add_row(std::vector<Cell> row);
  std::string to_csv() const;

  // Parses text written by to_csv. Numeric cells come back as doubles.
  static ResultTable from_csv(const std::string& text);

  std::size_t column_index(const std::string& name) const;
};

// Shortest round-trip decimal form.
std::string format_number(double v);

// Writes to path + ".tmp" then renames over path.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace qpac
