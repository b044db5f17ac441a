#include "erws/csv.hpp"

#include <cstdio>
#include <cstdlib>

#include "erws/errors.hpp"

namespace erws::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_int(std::int64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
  return buf;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool parse_full_double(const std::string& cell, double* value) {
  if (cell.empty()) return false;
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + cell.size()) return false;
  *value = v;
  return true;
}

}  // namespace

Table parse(const std::string& text) {
  Table table;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t len = (nl == std::string::npos) ? text.size() - start : nl - start;
    std::string line = text.substr(start, len);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      if (table.header.empty()) {
        table.header = split_row(line);
      } else {
        table.rows.push_back(split_row(line));
        if (table.rows.back().size() != table.header.size())
          throw RangeError("csv row has " + std::to_string(table.rows.back().size()) +
                           " cells, header has " + std::to_string(table.header.size()));
      }
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  if (table.header.empty()) throw RangeError("csv document is empty");
  return table;
}

std::string emit(const Table& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

std::string normalize(const std::string& text) {
  Table table = parse(text);
  for (auto& row : table.rows) {
    for (auto& cell : row) {
      double v = 0.0;
      if (parse_full_double(cell, &v)) cell = format_double(v);
    }
  }
  return emit(table);
}

std::size_t column_index(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) return i;
  throw RangeError("csv column not found: " + name);
}

}  // namespace erws::csv
