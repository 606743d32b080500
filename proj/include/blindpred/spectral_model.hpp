#pragma once

/**
 * @file spectral_model.hpp
 * @brief Stationary process models: autocovariance sequences and spectral densities.
 *
 * A zero-mean stationary process is described either by its autocovariances
 * r_k = Cov(X_i, X_{i+k}) or by its spectral density
 *
 *     f(t) = sum_k r_k e^{ikt} = r_0 + 2 sum_{k>=1} r_k cos(kt).
 *
 * Both are stored as finite, even coefficient lists (lags 0..P). Extrema of a
 * symbol are located on a uniform grid of [0, 2pi) and then refined locally.
 */

#include <cstddef>
#include <span>
#include <vector>

namespace blindpred {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Safety margin subtracted from (added to) the grid minimum (maximum).
inline constexpr double kBoundMargin = 1e-9;

/**
 * @brief Autocovariances r_0..r_P with an implied symmetric extension.
 *
 * `tail_bound` bounds sum_{|k|>P} r_k^2. A zero tail means the sequence is
 * finitely supported and lags beyond P are exactly zero.
 */
class CovarianceSequence {
public:
    /// @throws Error(InvalidInput) if r_0 <= 0, |r_k| > r_0, entries are not finite or tail < 0.
    explicit CovarianceSequence(std::vector<double> values, double tail_bound = 0.0);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t max_lag() const noexcept { return values_.size() - 1; }
    [[nodiscard]] double tail_bound() const noexcept { return tail_bound_; }
    [[nodiscard]] double variance() const noexcept { return values_.front(); }

    /// r_{|lag|}; zero beyond the support of a finitely supported sequence.
    /// @throws Error(LagOutOfRange) if |lag| > P and the tail is not zero.
    [[nodiscard]] double at(long lag) const;

    /// True when the n x n Toeplitz matrix built from the leading lags is PSD.
    [[nodiscard]] bool leading_window_psd(std::size_t n, double tolerance = 1e-12) const;

private:
    std::vector<double> values_;
    double tail_bound_;
};

/// Location and value of an extremum of a trigonometric polynomial.
struct Extremum {
    double t = 0.0;
    double value = 0.0;
};

/**
 * @brief Real even trigonometric polynomial g(t) = a_0 + 2 sum_{k=1}^{P} a_k cos(kt).
 *
 * The empirical spectral density is one of these and may be negative somewhere.
 */
class TrigPolynomial {
public:
    TrigPolynomial() : coeffs_{0.0} {}
    explicit TrigPolynomial(std::vector<double> coefficients);

    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    /// a_{|k|}, zero outside the support.
    [[nodiscard]] double coefficient(long k) const noexcept;

    [[nodiscard]] double operator()(double t) const noexcept;

    /// Values at t_j = 2 pi j / grid_size, j = 0..grid_size-1.
    [[nodiscard]] std::vector<double> evaluate_grid(std::size_t grid_size) const;

    /// Grid minimum followed by golden-section refinement around the best node.
    [[nodiscard]] Extremum minimum(std::size_t grid_size = kDefaultGridSize) const;
    [[nodiscard]] Extremum maximum(std::size_t grid_size = kDefaultGridSize) const;

private:
    std::vector<double> coeffs_;
};

/**
 * @brief Spectral density with lower/upper bounds m, m' and a declared Sobolev index.
 *
 * Bounds are computed (grid extrema minus/plus kBoundMargin), not asserted by
 * the caller. The Sobolev index is metadata: finitely supported symbols lie in
 * every W_s.
 */
class SpectralDensity {
public:
    /// @throws Error(NonPositiveSpectrum) if the computed lower bound is not positive.
    static SpectralDensity from_coefficients(std::vector<double> coefficients,
                                             double sobolev_index = 1.0,
                                             std::size_t grid_size = kDefaultGridSize);

    /// Bounds supplied by the caller, e.g. (1/m', 1/m) for an inverse symbol.
    static SpectralDensity with_bounds(std::vector<double> coefficients, double lower, double upper,
                                       double sobolev_index = 1.0,
                                       std::size_t grid_size = kDefaultGridSize);

    [[nodiscard]] const TrigPolynomial& symbol() const noexcept { return symbol_; }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return symbol_.coefficients(); }
    [[nodiscard]] double operator()(double t) const noexcept { return symbol_(t); }
    [[nodiscard]] double lower_bound() const noexcept { return lower_; }
    [[nodiscard]] double upper_bound() const noexcept { return upper_; }
    [[nodiscard]] double sobolev_index() const noexcept { return sobolev_index_; }
    [[nodiscard]] std::size_t grid_size() const noexcept { return grid_size_; }
    /// sum_{k != 0} |k|^{2s} a_k^2 at the declared index s.
    [[nodiscard]] double stored_sobolev_norm() const;

private:
    SpectralDensity(TrigPolynomial symbol, double lower, double upper, double s, std::size_t grid)
        : symbol_(std::move(symbol)), lower_(lower), upper_(upper), sobolev_index_(s), grid_size_(grid) {}

    TrigPolynomial symbol_;
    double lower_;
    double upper_;
    double sobolev_index_;
    std::size_t grid_size_;
};

/// a_k = r_k. @throws Error(NonPositiveSpectrum) when the symbol is not bounded away from zero.
[[nodiscard]] SpectralDensity covariance_to_spectrum(const CovarianceSequence& cov,
                                                     double sobolev_index = 1.0,
                                                     std::size_t grid_size = kDefaultGridSize);

/// r_k = a_k for k <= min(max_lag, P); dropped coefficients go into the tail bound.
[[nodiscard]] CovarianceSequence spectrum_to_covariance(const SpectralDensity& f, std::size_t max_lag);

/// sum_{k != 0} |k|^{2 order} a_k^2.
[[nodiscard]] double sobolev_norm(const TrigPolynomial& g, double order);
[[nodiscard]] double sobolev_norm(const SpectralDensity& f, double order);

/**
 * @brief Fourier coefficients p_0..p_{num_coeffs-1} of 1/f.
 *
 * Quadrature on max(4096, 8 num_coeffs, f.grid_size()) equispaced nodes. The
 * returned bounds are (1/m', 1/m).
 */
[[nodiscard]] SpectralDensity inverse_spectrum(const SpectralDensity& f, std::size_t num_coeffs);

}  // namespace blindpred
