#include "evofs/csv.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace evofs {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

namespace {

// Splits the full text into records of fields, honoring quotes.
std::vector<std::vector<std::string>> split_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // true once the current record has any content

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {  // escaped quote
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        ++i;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        ++i;
        break;
      case '\r':
        ++i;  // swallowed; the following \n ends the record
        break;
      case '\n':
        if (field_started || !field.empty() || !fields.empty()) {
          fields.push_back(std::move(field));
          records.push_back(std::move(fields));
        }
        field.clear();
        fields.clear();
        field_started = false;
        ++i;
        break;
      default:
        field += c;
        field_started = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
  if (field_started || !field.empty() || !fields.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

}  // namespace

CsvGrid parse_csv(const std::string& text, bool header_present) {
  auto records = split_records(text);
  CsvGrid grid;
  if (records.empty()) {
    if (header_present) throw std::runtime_error("csv: missing header row");
    return grid;
  }
  std::size_t start = 0;
  if (header_present) {
    grid.header = records[0];
    for (auto& h : grid.header) h = trim(h);
    start = 1;
  }
  const std::size_t width = header_present ? grid.header.size()
                                           : records[0].size();
  for (std::size_t r = start; r < records.size(); ++r) {
    if (records[r].size() != width) {
      std::ostringstream msg;
      msg << "csv: row " << r + 1 << " has " << records[r].size()
          << " fields, expected " << width;
      throw std::runtime_error(msg.str());
    }
    grid.rows.push_back(std::move(records[r]));
  }
  return grid;
}

CsvGrid read_csv(const std::string& path, bool header_present) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), header_present);
}

}  // namespace evofs
