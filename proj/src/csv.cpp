#include "equidist/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "equidist/error.hpp"

namespace equidist::csv {

int Table::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Table::require_column(const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw ValidationError("missing required column '" + name + "'");
  return c;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Table parse(const std::string& text, const std::string& origin) {
  Table t;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  long line = 1;
  long record_line = 1;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // Skip blank lines outside quotes.
    if (!(record.size() == 1 && record[0].empty())) {
      if (t.header.empty()) {
        t.header = record;
      } else {
        if (record.size() != t.header.size()) {
          throw ValidationError(origin + ":" + std::to_string(record_line) +
                                ": expected " + std::to_string(t.header.size()) +
                                " fields, got " + std::to_string(record.size()));
        }
        t.rows.push_back(record);
        t.line_numbers.push_back(record_line);
      }
    }
    record.clear();
    record_line = line;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // swallowed; newline handling below
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) {
    throw ValidationError(origin + ": unterminated quoted field");
  }
  if (field_started || !record.empty()) end_record();
  if (t.header.empty()) throw ValidationError(origin + ": empty file");
  return t;
}

std::string escape_field(const std::string& field) {
  bool needs_quotes = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::optional<double> parse_double(const std::string& cell, long line, const std::string& col) {
  if (cell.empty()) return std::nullopt;
  double v{};
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("line " + std::to_string(line) + ": column '" + col +
                          "' is not numeric: '" + cell + "'");
  }
  return v;
}

std::optional<long> parse_long(const std::string& cell, long line, const std::string& col) {
  if (cell.empty()) return std::nullopt;
  long v{};
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("line " + std::to_string(line) + ": column '" + col +
                          "' is not an integer: '" + cell + "'");
  }
  return v;
}

std::string format_double(double v) {
  // Shortest form that parses back to the same double.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back{};
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace equidist::csv
