#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred::cli {

/// Runs the command line (without the program name). Returns the process exit code:
/// 0 on success, 1 on usage or input errors, 2 when a verification fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Predictor CSV: '#' metadata, a row holding K, then the K x K coefficient matrix.
void write_predictor_csv(std::ostream& out, const Matrix& coefficients);
[[nodiscard]] Matrix read_predictor_csv(std::istream& in);

}  // namespace blindpred::cli
