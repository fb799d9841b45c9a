#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifsaddr/ifs.hpp"

namespace ifsaddr {

/// {"lambda": x, "points": [[...], ...], "probs": [...]}. Numbers may also
/// be given as strings such as "7/10" to keep them exact.
struct IfsFile {
  IfsSystem sys;
  std::vector<double> probs;  ///< empty when absent
};

/// Throws InvalidArgument on malformed JSON or fields, BadProbabilityVector
/// when probs does not sum to 1 within 1e-9, plus the IfsSystem errors.
IfsFile parse_ifs_json(const std::string& text);
/// Throws IoError when the file cannot be read.
IfsFile load_ifs_file(const std::string& path);

/// %.17g with '.' as decimal separator.
std::string format_double(double v);

/// Comma-separated rows; the header is written on construction.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace ifsaddr
