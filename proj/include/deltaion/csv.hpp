#pragma once

// Locale-independent CSV output: dot decimal, '\n' newlines, headers always
// present, floats at 17 significant digits so values round-trip bit-exactly.

#include <fstream>
#include <string>
#include <vector>

namespace deltaion {

std::string format_double(double v);  // %.17g, locale-independent

class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& values);

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }

private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace deltaion
