#pragma once

#include <charconv>
#include <istream>
#include <string>
#include <vector>

#include "pvwatch/ingest.hpp"

namespace pvwatch::csv {

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Reads the next line, tolerating CRLF endings. Returns false at EOF.
inline bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) {
    return false;
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  ++line_no;
  return true;
}

inline void expect_header(std::istream& in, const std::string& expected, std::size_t& line_no) {
  std::string line;
  if (!next_line(in, line, line_no)) {
    return;  // empty file: nothing to read, not an error
  }
  if (line != expected) {
    throw ParseError(line_no, "expected header '" + expected + "', got '" + line + "'");
  }
}

inline double parse_double(const std::string& field, std::size_t line_no,
                           const std::string& what) {
  double value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(line_no, "unparsable " + what + " '" + field + "'");
  }
  return value;
}

inline int parse_int(const std::string& field, std::size_t line_no, const std::string& what) {
  int value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(line_no, "unparsable " + what + " '" + field + "'");
  }
  return value;
}

inline Date parse_date(const std::string& field, std::size_t line_no) {
  try {
    return Date::parse(field);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

// Shortest decimal that round-trips the exact double value.
std::string format_double(double value);

}  // namespace pvwatch::csv
