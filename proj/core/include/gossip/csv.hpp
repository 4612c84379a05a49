#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gossip {

/// 12 significant digits, '.' decimal point, no locale dependence.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  std::string to_string() const;
};

}  // namespace gossip
