#pragma once

/**
 * @file toeplitz_algebra.hpp
 * @brief Finite Toeplitz minors, SPD solves, Schur complements and known-covariance projectors.
 *
 * Time indices are signed: the observed window of size K is O_K = {-K..-1},
 * the blind block is B_K = {0..K-1}. Operators on the whole line are realized
 * on a truncation [-T, T) with horizon T.
 */

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blindpred/spectral_model.hpp"

namespace blindpred {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexSet = std::vector<long>;

/// {first, first+1, ..., last_exclusive-1}.
[[nodiscard]] IndexSet index_range(long first, long last_exclusive);

/// Symmetric Toeplitz matrix, entry (i, j) = r_{|i-j|}.
class ToeplitzMatrix {
public:
    explicit ToeplitzMatrix(std::vector<double> first_row);
    /// Leading n x n section of T(f) for the symbol with coefficients `cov`.
    static ToeplitzMatrix from_covariance(const CovarianceSequence& cov, std::size_t n);

    [[nodiscard]] std::size_t dimension() const noexcept { return first_row_.size(); }
    [[nodiscard]] std::span<const double> first_row() const noexcept { return first_row_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return first_row_[i > j ? i - j : j - i];
    }
    [[nodiscard]] Matrix dense() const;

private:
    std::vector<double> first_row_;
};

/// Split of the truncated line [-T, T) for a window K.
struct IndexBlocks {
    IndexBlocks(std::size_t window, long horizon);

    std::size_t window;
    long horizon;

    [[nodiscard]] IndexSet missing() const { return index_range(-horizon, -static_cast<long>(window)); }
    [[nodiscard]] IndexSet observed() const { return index_range(-static_cast<long>(window), 0); }
    [[nodiscard]] IndexSet blind() const { return index_range(0, static_cast<long>(window)); }
    [[nodiscard]] IndexSet future() const { return index_range(static_cast<long>(window), horizon); }
};

/// Default truncation horizon for infinite-index operators: max(512, 16 K).
[[nodiscard]] long default_horizon(std::size_t window);

/**
 * Linear predictor from an observed window to targets.
 *
 * Row i weights the i-th observed sample in time order (oldest first), column
 * j produces the prediction of the j-th target.
 */
struct PredictorCoefficients {
    Matrix matrix;

    [[nodiscard]] std::size_t observed_size() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    [[nodiscard]] std::size_t target_size() const noexcept { return static_cast<std::size_t>(matrix.cols()); }

    /// Predictions for each target given the observed window (oldest first).
    [[nodiscard]] Vector apply(std::span<const double> window) const;
};

/// Gamma_{rows, cols}, entry (i, j) = r_{|i-j|}.
/// @throws Error(LagOutOfRange) when a lag is beyond the support of a sequence with a tail.
[[nodiscard]] Matrix build_minor(const CovarianceSequence& cov, const IndexSet& rows, const IndexSet& cols);

/// Solves T X = rhs by Cholesky. @throws Error(NotPositiveDefinite).
[[nodiscard]] Matrix spd_solve(const ToeplitzMatrix& t, const Matrix& rhs);
[[nodiscard]] Matrix spd_solve(const Matrix& spd, const Matrix& rhs);
[[nodiscard]] Matrix spd_inverse(const Matrix& spd);

/**
 * @brief S = Lambda_A - Lambda_AM Lambda_M^{-1} Lambda_MA with Lambda = Gamma^{-1} on [-T, T).
 *
 * M is the complement of A inside the truncation. S equals (Gamma_A)^{-1}.
 * @throws Error(HorizonTooSmall) if A is not contained in [-T, T).
 */
[[nodiscard]] Matrix schur_complement_inverse(const CovarianceSequence& cov, const IndexSet& a, long horizon);

/// Same identity for an arbitrary dense SPD matrix; `a` holds 0-based positions.
[[nodiscard]] Matrix schur_complement_inverse(const Matrix& gamma, const std::vector<std::size_t>& a);

/// (Gamma_{O_K})^{-1} Gamma_{O_K B_K}, a K x K matrix.
[[nodiscard]] PredictorCoefficients oracle_predictor(const CovarianceSequence& cov, std::size_t window);

/// Best linear prediction of X_0..X_{targets-1} from the last `past` samples; `past` x `targets`.
[[nodiscard]] PredictorCoefficients finite_past_predictor(const CovarianceSequence& cov, std::size_t past,
                                                         std::size_t targets);

/// Q restricted to B: Gamma_B - Gamma_BA Gamma_A^{-1} Gamma_AB.
[[nodiscard]] Matrix prediction_error_operator(const CovarianceSequence& cov, const IndexSet& a, const IndexSet& b);

/// Both routes to the projection of targets B onto the truncated past {-T..-1}.
struct InfinitePastProjector {
    Matrix coefficients;   ///< Gamma_past^{-1} Gamma_{past,B}; T x |B|.
    Matrix lambda_form;    ///< -Lambda_{past,future} Lambda_future^{-1} restricted to B, Lambda from 1/f.
    double discrepancy = 0.0;  ///< max |coefficients - lambda_form|.
};

/// @throws Error(HorizonTooSmall) if B is not in [0, T) or the two routes differ by more than `tolerance`.
[[nodiscard]] InfinitePastProjector projector_infinite_past(const CovarianceSequence& cov, const IndexSet& b,
                                                            long horizon, double tolerance = 1e-6);

/// Largest singular value.
[[nodiscard]] double spectral_norm(const Matrix& d);

/**
 * @brief sup over u with u' Gamma_cols u = 1 of sqrt(v' Gamma_rows v), v = D u.
 *
 * Default geometry: rows = {-D.rows()..-1}, cols = {0..D.cols()-1}.
 */
[[nodiscard]] double warped_operator_norm(const Matrix& d, const CovarianceSequence& cov);
[[nodiscard]] double warped_operator_norm(const Matrix& d, const Matrix& gamma_rows, const Matrix& gamma_cols);

}  // namespace blindpred
