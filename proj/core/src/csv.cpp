#include "gossip/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace gossip {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) out << ',';
    out << row[i];
  }
  out << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
  write_row(out, header);
  for (const auto& row : rows) write_row(out, row);
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace gossip
