#pragma once

/**
 * @file blind_predictor.hpp
 * @brief Plug-in projector (tilde Gamma_{O_K})^{-1} hat Gamma_{O_K B_K}, the window rule and the risk constants.
 *
 * The covariance is estimated from the same path that is then used for
 * prediction; nothing else about the process is known except, optionally,
 * the spectral lower bound m.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "blindpred/covariance_estimation.hpp"
#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred {

struct BlindPredictor {
    PredictorCoefficients coefficients;  ///< K x K, rows X_{-K}..X_{-1}, columns X_0..X_{K-1}.
    std::size_t window = 0;
    std::size_t path_length = 0;
    double alpha_hat = 0.0;
    double fhat_min = 0.0;
    LowerBound m;
};

/// Fits on the whole path. With no m, the fallback lower bound is used and flagged.
/// @throws Error(WindowTooLarge) if 2K >= N.
[[nodiscard]] BlindPredictor fit(std::span<const double> samples, std::size_t window, std::optional<double> m);
[[nodiscard]] BlindPredictor fit(const ObservedPath& path, std::size_t window, std::optional<double> m);

/// Predictions of X_0..X_{K-1} from the last K samples of the path.
[[nodiscard]] std::vector<double> predict(const BlindPredictor& predictor, std::span<const double> samples);
[[nodiscard]] std::vector<double> predict(const BlindPredictor& predictor, const ObservedPath& path);

/// max(1, floor((N / ln N)^{1 / (2 (2s + 3))})). @throws Error(DomainError) for N <= 2 or s < 1.
[[nodiscard]] std::size_t choose_window(std::size_t n, double s);

struct TheoryConstants {
    double c0 = 0.0;  ///< 4 m' (6 m'/m^2 + 4/m + 2)
    double c1 = 0.0;  ///< C0 r4^{1/4} / sqrt(m)
    double c2 = 0.0;  ///< ||1/f||_{W_2s} m' (1 + m'/m), with the norm supplied by the caller
    double c3 = 0.0;  ///< m'/m
    double c4 = 0.0;  ///< (m'^2/m) (1 + m'/m)
    double r4 = 0.0;  ///< 3 r_0^2
};

/// @throws Error(DomainError) if m <= 0 or m' < m.
[[nodiscard]] TheoryConstants theory_constants(double m, double m_upper, double r0, double f_inv_sobolev);

/// Bias constant as it comes out of the bias argument: C4 sqrt(||1/f||_{W_s}).
[[nodiscard]] double bias_constant_from_proof(const TheoryConstants& consts, double f_inv_sobolev_s);

/// C1 K^2 sqrt(log K) / sqrt(N) + C2 / K^{(2s-1)/2}. Reference curve only.
[[nodiscard]] double risk_bound(std::size_t n, std::size_t window, const TheoryConstants& consts, double s);

/// Exponent of (log N / N) in the rate of the rate-optimal window: (2s-1) / (2 (2s+3)).
[[nodiscard]] double rate_exponent(double s);

}  // namespace blindpred
