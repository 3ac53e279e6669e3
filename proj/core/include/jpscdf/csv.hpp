#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jps {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Strict double parse of a whole field.
double parse_double(const std::string& field);

// CSV with '#'-prefixed metadata header lines, ',' separators, '.' decimals.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void metadata(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

struct CsvContent {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a CSV written by CsvWriter (or compatible hand-written input).
CsvContent read_csv(std::istream& in);

std::vector<std::string> split_fields(const std::string& line, char sep = ',');

}  // namespace jps
