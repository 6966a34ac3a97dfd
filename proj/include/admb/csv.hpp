#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace admb {

/// Quotes a field when it contains a comma, quote, CR or LF; embedded quotes
/// are doubled.
std::string csv_escape(const std::string& field);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Line-oriented CSV writer (CRLF-free, RFC 4180 quoting).
class CsvWriter {
 public:
  /// Truncates `path` and writes the header row. Throws IoError.
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);
  /// Flushes and reports write failures as IoError.
  void close();

 private:
  std::string path_;
  std::size_t columns_;
  std::ofstream out_;
};

/// Parses a CSV document (quoted fields allowed); used to read outputs back.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace admb
