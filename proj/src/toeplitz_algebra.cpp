#include "blindpred/toeplitz_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "blindpred/errors.hpp"

namespace blindpred {

namespace {

Eigen::LLT<Matrix> factor_spd(const Matrix& spd) {
    if (spd.rows() != spd.cols()) throw Error(ErrorCode::InvalidInput, "matrix is not square");
    Eigen::LLT<Matrix> llt(spd);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    }
    return llt;
}

Matrix select(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<long>(i), static_cast<long>(j)) = m(static_cast<long>(rows[i]), static_cast<long>(cols[j]));
    return out;
}

// Lambda minors from the symbol entries p_{|i-j|}.
Matrix symbol_minor(std::span<const double> p, const IndexSet& rows, const IndexSet& cols) {
    Matrix out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto lag = static_cast<std::size_t>(std::labs(rows[i] - cols[j]));
            out(static_cast<long>(i), static_cast<long>(j)) = lag < p.size() ? p[lag] : 0.0;
        }
    return out;
}

}  // namespace

IndexSet index_range(long first, long last_exclusive) {
    IndexSet out;
    for (long i = first; i < last_exclusive; ++i) out.push_back(i);
    return out;
}

ToeplitzMatrix::ToeplitzMatrix(std::vector<double> first_row) : first_row_(std::move(first_row)) {
    if (first_row_.empty()) throw Error(ErrorCode::InvalidInput, "Toeplitz matrix needs dimension >= 1");
}

ToeplitzMatrix ToeplitzMatrix::from_covariance(const CovarianceSequence& cov, std::size_t n) {
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = cov.at(static_cast<long>(k));
    return ToeplitzMatrix(std::move(row));
}

Matrix ToeplitzMatrix::dense() const {
    const auto n = static_cast<long>(dimension());
    Matrix out(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) out(i, j) = first_row_[static_cast<std::size_t>(std::labs(i - j))];
    return out;
}

IndexBlocks::IndexBlocks(std::size_t window_, long horizon_) : window(window_), horizon(horizon_) {
    if (window == 0) throw Error(ErrorCode::DomainError, "window must be positive");
    if (horizon < static_cast<long>(window)) throw Error(ErrorCode::HorizonTooSmall, "horizon must be >= window");
}

long default_horizon(std::size_t window) { return std::max(512L, 16L * static_cast<long>(window)); }

Vector PredictorCoefficients::apply(std::span<const double> window) const {
    if (window.size() != observed_size()) {
        throw Error(ErrorCode::InvalidInput, "window length " + std::to_string(window.size()) +
                                                 " does not match predictor size " + std::to_string(observed_size()));
    }
    const Eigen::Map<const Vector> x(window.data(), static_cast<long>(window.size()));
    return matrix.transpose() * x;
}

Matrix build_minor(const CovarianceSequence& cov, const IndexSet& rows, const IndexSet& cols) {
    Matrix out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<long>(i), static_cast<long>(j)) = cov.at(rows[i] - cols[j]);
    return out;
}

Matrix spd_solve(const Matrix& spd, const Matrix& rhs) {
    if (rhs.rows() != spd.rows()) throw Error(ErrorCode::InvalidInput, "right-hand side has wrong row count");
    return factor_spd(spd).solve(rhs);
}

Matrix spd_solve(const ToeplitzMatrix& t, const Matrix& rhs) { return spd_solve(t.dense(), rhs); }

Matrix spd_inverse(const Matrix& spd) {
    Matrix inv = factor_spd(spd).solve(Matrix::Identity(spd.rows(), spd.cols()));
    return 0.5 * (inv + inv.transpose());
}

Matrix schur_complement_inverse(const Matrix& gamma, const std::vector<std::size_t>& a) {
    const auto n = static_cast<std::size_t>(gamma.rows());
    std::vector<bool> in_a(n, false);
    for (auto i : a) {
        if (i >= n) throw Error(ErrorCode::HorizonTooSmall, "index set leaves the truncation");
        if (in_a[i]) throw Error(ErrorCode::InvalidInput, "index set has duplicates");
        in_a[i] = true;
    }
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_a[i]) m.push_back(i);

    const Matrix lambda = spd_inverse(gamma);
    Matrix s = select(lambda, a, a);
    if (!m.empty()) {
        const Matrix lambda_am = select(lambda, a, m);
        s -= lambda_am * spd_solve(select(lambda, m, m), lambda_am.transpose());
    }
    return 0.5 * (s + s.transpose());
}

Matrix schur_complement_inverse(const CovarianceSequence& cov, const IndexSet& a, long horizon) {
    if (horizon <= 0) throw Error(ErrorCode::HorizonTooSmall, "horizon must be positive");
    std::vector<std::size_t> positions;
    positions.reserve(a.size());
    for (long i : a) {
        if (i < -horizon || i >= horizon) {
            throw Error(ErrorCode::HorizonTooSmall,
                        "index " + std::to_string(i) + " outside [-" + std::to_string(horizon) + ", " +
                            std::to_string(horizon) + ")");
        }
        positions.push_back(static_cast<std::size_t>(i + horizon));
    }
    const Matrix gamma = ToeplitzMatrix::from_covariance(cov, static_cast<std::size_t>(2 * horizon)).dense();
    return schur_complement_inverse(gamma, positions);
}

PredictorCoefficients finite_past_predictor(const CovarianceSequence& cov, std::size_t past, std::size_t targets) {
    if (past == 0 || targets == 0) throw Error(ErrorCode::DomainError, "window sizes must be positive");
    const IndexSet observed = index_range(-static_cast<long>(past), 0);
    const IndexSet blind = index_range(0, static_cast<long>(targets));
    return {spd_solve(build_minor(cov, observed, observed), build_minor(cov, observed, blind))};
}

PredictorCoefficients oracle_predictor(const CovarianceSequence& cov, std::size_t window) {
    return finite_past_predictor(cov, window, window);
}

Matrix prediction_error_operator(const CovarianceSequence& cov, const IndexSet& a, const IndexSet& b) {
    const std::set<long> a_set(a.begin(), a.end());
    for (long j : b)
        if (a_set.contains(j)) throw Error(ErrorCode::InvalidInput, "target and conditioning sets overlap");
    const Matrix gamma_b = build_minor(cov, b, b);
    if (a.empty()) return gamma_b;
    const Matrix gamma_ab = build_minor(cov, a, b);
    Matrix q = gamma_b - gamma_ab.transpose() * spd_solve(build_minor(cov, a, a), gamma_ab);
    return 0.5 * (q + q.transpose());
}

InfinitePastProjector projector_infinite_past(const CovarianceSequence& cov, const IndexSet& b, long horizon,
                                              double tolerance) {
    if (horizon <= 0) throw Error(ErrorCode::HorizonTooSmall, "horizon must be positive");
    for (long j : b) {
        if (j < 0 || j >= horizon) {
            throw Error(ErrorCode::HorizonTooSmall, "target " + std::to_string(j) + " outside [0, horizon)");
        }
    }
    const IndexSet past = index_range(-horizon, 0);
    const IndexSet future = index_range(0, horizon);

    InfinitePastProjector out;
    out.coefficients = spd_solve(build_minor(cov, past, past), build_minor(cov, past, b));

    // Lambda = T(1/f) realized from the symbol coefficients, then -Lambda_AM Lambda_M^{-1}.
    const SpectralDensity f = covariance_to_spectrum(cov);
    const SpectralDensity inv = inverse_spectrum(f, static_cast<std::size_t>(2 * horizon));
    const Matrix lambda_pf = symbol_minor(inv.coefficients(), past, future);
    const Matrix lambda_ff = symbol_minor(inv.coefficients(), future, future);
    Matrix selector = Matrix::Zero(horizon, static_cast<long>(b.size()));
    for (std::size_t j = 0; j < b.size(); ++j) selector(b[j], static_cast<long>(j)) = 1.0;
    out.lambda_form = -lambda_pf * spd_solve(lambda_ff, selector);

    out.discrepancy = b.empty() ? 0.0 : (out.coefficients - out.lambda_form).cwiseAbs().maxCoeff();
    if (!(out.discrepancy <= tolerance)) {
        throw Error(ErrorCode::HorizonTooSmall, "projector routes disagree by " + std::to_string(out.discrepancy) +
                                                    " at horizon " + std::to_string(horizon));
    }
    return out;
}

double spectral_norm(const Matrix& d) {
    if (d.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(d);
    return svd.singularValues()(0);
}

double warped_operator_norm(const Matrix& d, const Matrix& gamma_rows, const Matrix& gamma_cols) {
    if (gamma_rows.rows() != d.rows() || gamma_cols.rows() != d.cols()) {
        throw Error(ErrorCode::InvalidInput, "geometry does not match operator shape");
    }
    factor_spd(gamma_rows);
    factor_spd(gamma_cols);
    const Matrix lhs = d.transpose() * gamma_rows * d;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(0.5 * (lhs + lhs.transpose()), gamma_cols,
                                                        Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "generalized eigenproblem failed");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double warped_operator_norm(const Matrix& d, const CovarianceSequence& cov) {
    const IndexSet rows = index_range(-static_cast<long>(d.rows()), 0);
    const IndexSet cols = index_range(0, static_cast<long>(d.cols()));
    return warped_operator_norm(d, build_minor(cov, rows, rows), build_minor(cov, cols, cols));
}

}  // namespace blindpred
