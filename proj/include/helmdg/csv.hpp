#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

/// A CSV table: `#` metadata lines, one header row, string cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_metadata(const std::string& line) { metadata_.push_back(line); }
  /// Throws InvalidParameter if the cell count differs from the header.
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> metadata_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip-stable formatting (%.10g); "nan" for NaN.
std::string fmt(double v);
std::string fmt(Index v);
inline std::string fmt(int v) { return fmt(static_cast<Index>(v)); }

}  // namespace helmdg
