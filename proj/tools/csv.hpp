#pragma once

// Strict CSV reader for numeric tables. Rows are observations, columns are
// variables. An optional header row is auto-detected (any non-numeric field
// in the first row). Missing values and ragged rows are hard errors.

#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csv {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<double> values;  // row-major, rows * cols entries
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool header_skipped = false;
};

inline std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline bool parse_number(const std::string& field, double* out) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + field.size()) return false;
  *out = value;
  return true;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;  // blank lines carry no data
    std::vector<std::string> fields = split_fields(line);

    if (!saw_content) {
      saw_content = true;
      table.cols = fields.size();
      bool all_numeric = true;
      double ignored;
      for (const std::string& f : fields) {
        if (!parse_number(f, &ignored)) {
          all_numeric = false;
          break;
        }
      }
      if (!all_numeric) {
        table.header_skipped = true;  // header row: remember the width only
        continue;
      }
    }

    if (fields.size() != table.cols) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.cols) + " fields, got " +
                       std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty()) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": missing value in column " +
                         std::to_string(c + 1));
      }
      double value;
      if (!parse_number(fields[c], &value)) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": '" + fields[c] +
                         "' in column " + std::to_string(c + 1) + " is not a number");
      }
      table.values.push_back(value);
    }
    ++table.rows;
  }
  if (table.rows == 0) throw ParseError(path + ": no data rows");
  return table;
}

}  // namespace csv
