#pragma once

/**
 * @file covariance_estimation.hpp
 * @brief Empirical autocovariance, truncated empirical spectral density and its diagonal regularization.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "blindpred/spectral_model.hpp"
#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred {

/// Observed samples X_{-N}..X_{-1}, oldest first.
class ObservedPath {
public:
    /// @throws Error(InvalidInput) if fewer than 2 samples or a sample is not finite.
    explicit ObservedPath(std::vector<double> samples);

    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    /// The `count` most recent samples, oldest first.
    [[nodiscard]] std::span<const double> last(std::size_t count) const;

private:
    std::vector<double> samples_;
};

/// (1/(N-p)) sum_k X_k X_{k+p}. @throws Error(LagTooLarge) if p >= N.
[[nodiscard]] double empirical_autocovariance(std::span<const double> samples, std::size_t p);
[[nodiscard]] double empirical_autocovariance(const ObservedPath& path, std::size_t p);

/// r_hat(0..2K) for a window K.
struct EmpiricalCovariance {
    std::vector<double> r_hat;
    std::size_t window = 0;
    std::size_t path_length = 0;

    [[nodiscard]] double at(long lag) const;
};

/// @throws Error(WindowTooLarge) if 2K >= N.
[[nodiscard]] EmpiricalCovariance estimate_covariance(std::span<const double> samples, std::size_t window);
[[nodiscard]] EmpiricalCovariance estimate_covariance(const ObservedPath& path, std::size_t window);

/// f_hat_K(t) = sum_{|p| <= K} r_hat(|p|) e^{ipt}; may be negative.
[[nodiscard]] TrigPolynomial empirical_spectral_density(const EmpiricalCovariance& est);

/// alpha = -min 1{min <= 0} + (m/4) 1{min <= m/4}.
[[nodiscard]] double regularization_shift(double fhat_min, double m);

/// Lower bound m used by the shift, and whether it was estimated from the data.
struct LowerBound {
    double value = 0.0;
    bool estimated = false;
};

/// Fallback when m is not configured: max(min f_hat_K, 1e-3).
inline constexpr double kFallbackLowerBound = 1e-3;

struct RegularizedCovariance {
    EmpiricalCovariance base;
    double fhat_min = 0.0;
    double alpha_hat = 0.0;
    LowerBound m;
};

/// Computes min f_hat_K on the grid and the shift alpha_hat.
[[nodiscard]] RegularizedCovariance regularize(EmpiricalCovariance est, std::optional<double> m,
                                               std::size_t grid_size = kDefaultGridSize);

/// Tilde Gamma: K x K Toeplitz with first row (r_hat(0) + alpha, r_hat(1), ..., r_hat(K-1)).
[[nodiscard]] ToeplitzMatrix regularized_covariance_matrix(const RegularizedCovariance& reg, std::size_t window);

/// max_{p <= 2K} |r_hat(p) - r(p)|. @throws Error(LagOutOfRange).
[[nodiscard]] double sup_deviation(const EmpiricalCovariance& est, const CovarianceSequence& truth);

}  // namespace blindpred
