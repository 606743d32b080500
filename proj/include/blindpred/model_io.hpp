#pragma once

// Process models from plain-text key=value descriptions.
//
// Tokens are separated by whitespace, commas, semicolons or newlines; '#'
// starts a comment. Either list autocovariances explicitly
//
//     r_0=1.25
//     r_1=0.5
//
// or use a shorthand:
//
//     model=white sigma2=1
//     model=ar1 phi=0.6 sigma2=1
//     model=ma1 theta=0.5 sigma2=1
//
// The leading "model=" may be dropped ("ar1,phi=0.6").
//
// Optional keys: s=<Sobolev index> (default 1), tail=<tail bound> for
// explicit lists.

#include <string>
#include <string_view>

#include "blindpred/spectral_model.hpp"

namespace blindpred {

struct ProcessModel {
    std::string name;
    CovarianceSequence cov;
    double sobolev_index = 1.0;
};

[[nodiscard]] CovarianceSequence white_noise_covariance(double sigma2 = 1.0);
/// Innovation variance sigma2: r_k = sigma2 phi^k / (1 - phi^2), listed until r_k^2 underflows or 65536 lags.
[[nodiscard]] CovarianceSequence ar1_covariance(double phi, double sigma2 = 1.0);
/// r_0 = sigma2 (1 + theta^2), r_1 = sigma2 theta.
[[nodiscard]] CovarianceSequence ma1_covariance(double theta, double sigma2 = 1.0);

/// @throws Error(InvalidInput) on malformed text.
[[nodiscard]] ProcessModel parse_model(std::string_view text);

/// Reads `spec` as a file when one exists at that path, otherwise parses it as model text.
[[nodiscard]] ProcessModel load_model(const std::string& spec);

/// Canonical one-line description used in CSV metadata.
[[nodiscard]] std::string describe(const ProcessModel& model);

}  // namespace blindpred
