#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "netlap/linalg.hpp"

namespace netlap {

struct CsvOptions {
  bool header = false;  // skip one leading header row
};

/// Parses a comma-separated numeric matrix. Every row must have the same
/// number of fields; '.' is the decimal point and exponents are accepted.
/// Blank lines and lines starting with '#' are ignored.
Matrix read_matrix_csv(std::istream& in, const CsvOptions& opts = {},
                       const std::string& source = "<stream>");
Matrix read_matrix_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// Writes the shortest decimal form that round-trips each value exactly.
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_mask_csv(std::ostream& out, const BoolMatrix& m);

/// Writes `contents` to `path` through a temporary sibling file that is
/// renamed into place, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace netlap
