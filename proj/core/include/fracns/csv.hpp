#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace fracns {

/// Shortest round-trip-safe text for a double (17 significant digits).
inline std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

/// RFC-4180 field quoting: quote when the text contains a comma, quote,
/// CR or LF; double any embedded quotes.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Writes rows terminated by CRLF, as RFC-4180 prescribes.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string> header) : out_(out) {
    row(std::vector<std::string>(header));
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_escape(fields[i]);
    }
    out_ << "\r\n";
  }

 private:
  std::ostream& out_;
};

}  // namespace fracns
