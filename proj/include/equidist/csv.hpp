#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace equidist::csv {

// Minimal RFC-4180-ish table: header row + records, double quotes honored.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line of each row, for error reporting.
  std::vector<long> line_numbers;

  int column(const std::string& name) const;  // -1 if absent
  int require_column(const std::string& name) const;  // throws ValidationError
};

Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& origin);

std::string escape_field(const std::string& field);

// Numeric field helpers; empty cells map to nullopt. Malformed content throws
// ValidationError carrying the line number.
std::optional<double> parse_double(const std::string& cell, long line, const std::string& col);
std::optional<long> parse_long(const std::string& cell, long line, const std::string& col);

// Canonical double formatting: shortest representation that round-trips.
std::string format_double(double v);

}  // namespace equidist::csv
