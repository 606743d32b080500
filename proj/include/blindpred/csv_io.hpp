#pragma once

// CSV helpers. Every floating-point value is written with 17 significant
// digits; lines starting with '#' carry metadata.

#include <iosfwd>
#include <string>
#include <vector>

#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred {

[[nodiscard]] std::string format_double(double value);

/// Row-major matrix with a `# n=<rows>` header (plus `# cols=<cols>` when not square).
void write_matrix_csv(std::ostream& out, const Matrix& m);
[[nodiscard]] Matrix read_matrix_csv(std::istream& in);

/// One sample per line, oldest first.
void write_path_csv(std::ostream& out, const std::vector<double>& samples);
/// Skips blank lines and '#' lines. @throws Error(InvalidInput) on a malformed value.
[[nodiscard]] std::vector<double> read_path_csv(std::istream& in);
[[nodiscard]] std::vector<double> read_path_csv_file(const std::string& path);

}  // namespace blindpred
