#pragma once

#include <string>
#include <vector>

namespace evofs {

// Rectangular grid of raw cell strings, as read from disk.
struct CsvGrid {
  std::vector<std::string> header;           // empty when the file has no header row
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180 parser: quoted fields, escaped quotes ("" inside quotes), embedded
// commas/newlines inside quotes. Accepts \n and \r\n line endings. Throws
// std::runtime_error on unterminated quotes or ragged rows.
CsvGrid parse_csv(const std::string& text, bool header_present);

// Reads the whole file and parses it. Throws if the file cannot be opened.
CsvGrid read_csv(const std::string& path, bool header_present);

// Strips leading/trailing ASCII whitespace.
std::string trim(const std::string& s);

}  // namespace evofs
