#pragma once

#include <string>
#include <vector>

namespace vocarch::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Parses a comma-separated file with a header row. Double-quoted fields with
// embedded commas and "" escapes are accepted; CR/LF and CRLF line ends.
Table read_file(const std::string& path);
Table parse(const std::string& text);

std::string escape_field(const std::string& field);
std::string join_row(const std::vector<std::string>& fields);

// Fixed-precision float formatting used by every CSV writer so that stage
// artifacts are byte-stable across runs and thread counts.
std::string format_double(double v, int precision = 6);

}  // namespace vocarch::csv
