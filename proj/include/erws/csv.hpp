#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace erws::csv {

// Canonical number formats: 17 significant digits for doubles (lossless
// round trip), plain decimal for integers. All CSV output goes through
// these so that parse -> re-emit is byte-identical.
std::string format_double(double v);
std::string format_int(std::int64_t v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma/newline splitting only; the schemas never need quoting. Throws
// RangeError on ragged rows or an empty document.
Table parse(const std::string& text);

// '\n' line endings, no trailing separator.
std::string emit(const Table& table);

// parse + re-emit with every fully-numeric cell reformatted through
// format_double; the identity on anything this tool wrote.
std::string normalize(const std::string& text);

// Index of a named column; throws RangeError when absent.
std::size_t column_index(const Table& table, const std::string& name);

}  // namespace erws::csv
