#include "helmdg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace helmdg {

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw InvalidParameter("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

namespace {
void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out << '"';
      for (char ch : c) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    } else {
      out << c;
    }
  }
  out << '\n';
}
}  // namespace

void CsvTable::write(std::ostream& out) const {
  for (const auto& m : metadata_) out << "# " << m << '\n';
  write_line(out, columns_);
  for (const auto& r : rows_) write_line(out, r);
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(Index v) { return std::to_string(v); }

}  // namespace helmdg
