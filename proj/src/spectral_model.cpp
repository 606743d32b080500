#include "blindpred/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "blindpred/errors.hpp"

namespace blindpred {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Golden-section search for a minimum of `g` on [lo, hi].
Extremum golden_minimize(const std::function<double(double)>& g, double lo, double hi) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double gc = g(c);
    double gd = g(d);
    for (int it = 0; it < 100 && (b - a) > 1e-14; ++it) {
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d);
        }
    }
    return gc < gd ? Extremum{c, gc} : Extremum{d, gd};
}

Extremum grid_minimum(const TrigPolynomial& p, std::size_t grid_size, double sign) {
    if (grid_size < 4) throw Error(ErrorCode::InvalidInput, "grid size must be at least 4");
    const auto values = p.evaluate_grid(grid_size);
    std::size_t best = 0;
    for (std::size_t j = 1; j < values.size(); ++j) {
        if (sign * values[j] < sign * values[best]) best = j;
    }
    const double h = kTwoPi / static_cast<double>(grid_size);
    const double t0 = h * static_cast<double>(best);
    Extremum node{t0, values[best]};
    if (p.degree() == 0) return node;
    auto signed_eval = [&](double t) { return sign * p(t); };
    Extremum refined = golden_minimize(signed_eval, t0 - h, t0 + h);
    refined.value *= sign;
    if (sign * refined.value < sign * node.value) {
        refined.t = std::fmod(refined.t + kTwoPi, kTwoPi);
        return refined;
    }
    return node;
}

}  // namespace

// ---------------------------------------------------------------------------
// CovarianceSequence

CovarianceSequence::CovarianceSequence(std::vector<double> values, double tail_bound)
    : values_(std::move(values)), tail_bound_(tail_bound) {
    if (values_.empty()) throw Error(ErrorCode::InvalidInput, "covariance sequence is empty");
    if (!std::isfinite(tail_bound_) || tail_bound_ < 0.0) {
        throw Error(ErrorCode::InvalidInput, "tail bound must be finite and nonnegative");
    }
    const double r0 = values_.front();
    if (!std::isfinite(r0) || r0 <= 0.0) throw Error(ErrorCode::InvalidInput, "r_0 must be positive");
    for (std::size_t k = 1; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) throw Error(ErrorCode::InvalidInput, "non-finite autocovariance");
        if (std::abs(values_[k]) > r0 * (1.0 + 1e-12)) {
            throw Error(ErrorCode::InvalidInput, "|r_" + std::to_string(k) + "| exceeds r_0");
        }
    }
}

double CovarianceSequence::at(long lag) const {
    const auto k = static_cast<std::size_t>(std::labs(lag));
    if (k < values_.size()) return values_[k];
    if (tail_bound_ > 0.0) {
        throw Error(ErrorCode::LagOutOfRange,
                    "lag " + std::to_string(k) + " beyond support " + std::to_string(max_lag()) +
                        " of a sequence with nonzero tail");
    }
    return 0.0;
}

bool CovarianceSequence::leading_window_psd(std::size_t n, double tolerance) const {
    if (n == 0) return true;
    Eigen::MatrixXd t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t(i, j) = at(static_cast<long>(i) - static_cast<long>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tolerance * variance();
}

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double TrigPolynomial::coefficient(long k) const noexcept {
    const auto idx = static_cast<std::size_t>(std::labs(k));
    return idx < coeffs_.size() ? coeffs_[idx] : 0.0;
}

double TrigPolynomial::operator()(double t) const noexcept {
    // Clenshaw recurrence for a_0 + sum_{k>=1} (2 a_k) cos(kt).
    const double c = std::cos(t);
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) {
        const double b0 = 2.0 * coeffs_[k] + 2.0 * c * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs_[0] + c * b1 - b2;
}

std::vector<double> TrigPolynomial::evaluate_grid(std::size_t grid_size) const {
    std::vector<double> out(grid_size);
    const double h = kTwoPi / static_cast<double>(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) out[j] = (*this)(h * static_cast<double>(j));
    return out;
}

Extremum TrigPolynomial::minimum(std::size_t grid_size) const { return grid_minimum(*this, grid_size, 1.0); }

Extremum TrigPolynomial::maximum(std::size_t grid_size) const { return grid_minimum(*this, grid_size, -1.0); }

// ---------------------------------------------------------------------------
// SpectralDensity

SpectralDensity SpectralDensity::from_coefficients(std::vector<double> coefficients, double sobolev_index,
                                                   std::size_t grid_size) {
    if (sobolev_index < 1.0) throw Error(ErrorCode::DomainError, "Sobolev index must be >= 1");
    TrigPolynomial symbol(std::move(coefficients));
    const double lo = symbol.minimum(grid_size).value - kBoundMargin;
    const double hi = symbol.maximum(grid_size).value + kBoundMargin;
    if (!(lo > 0.0)) {
        throw Error(ErrorCode::NonPositiveSpectrum,
                    "spectral density minimum " + std::to_string(lo + kBoundMargin) + " is not positive");
    }
    return SpectralDensity(std::move(symbol), lo, hi, sobolev_index, grid_size);
}

SpectralDensity SpectralDensity::with_bounds(std::vector<double> coefficients, double lower, double upper,
                                             double sobolev_index, std::size_t grid_size) {
    if (!(lower > 0.0) || upper < lower) {
        throw Error(ErrorCode::DomainError, "bounds must satisfy 0 < lower <= upper");
    }
    return SpectralDensity(TrigPolynomial(std::move(coefficients)), lower, upper, sobolev_index, grid_size);
}

double SpectralDensity::stored_sobolev_norm() const { return sobolev_norm(symbol_, sobolev_index_); }

SpectralDensity covariance_to_spectrum(const CovarianceSequence& cov, double sobolev_index,
                                       std::size_t grid_size) {
    const auto v = cov.values();
    return SpectralDensity::from_coefficients(std::vector<double>(v.begin(), v.end()), sobolev_index,
                                              grid_size);
}

CovarianceSequence spectrum_to_covariance(const SpectralDensity& f, std::size_t max_lag) {
    const auto a = f.coefficients();
    const std::size_t keep = std::min(max_lag, a.size() - 1) + 1;
    double tail = 0.0;
    for (std::size_t k = keep; k < a.size(); ++k) tail += 2.0 * a[k] * a[k];
    return CovarianceSequence(std::vector<double>(a.begin(), a.begin() + static_cast<long>(keep)), tail);
}

double sobolev_norm(const TrigPolynomial& g, double order) {
    if (order < 0.0) throw Error(ErrorCode::DomainError, "Sobolev order must be nonnegative");
    const auto a = g.coefficients();
    double sum = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        sum += std::pow(static_cast<double>(k), 2.0 * order) * a[k] * a[k];
    }
    return 2.0 * sum;
}

double sobolev_norm(const SpectralDensity& f, double order) { return sobolev_norm(f.symbol(), order); }

SpectralDensity inverse_spectrum(const SpectralDensity& f, std::size_t num_coeffs) {
    if (num_coeffs == 0) throw Error(ErrorCode::DomainError, "num_coeffs must be positive");
    const std::size_t grid = std::max({kDefaultGridSize, 8 * num_coeffs, f.grid_size()});
    const auto values = f.symbol().evaluate_grid(grid);
    std::vector<double> reciprocal(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        if (!(values[j] > 0.0)) throw Error(ErrorCode::NonPositiveSpectrum, "symbol vanishes on the grid");
        reciprocal[j] = 1.0 / values[j];
    }
    std::vector<double> cos_table(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        cos_table[j] = std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    }
    std::vector<double> p(num_coeffs, 0.0);
    for (std::size_t k = 0; k < num_coeffs; ++k) {
        double acc = 0.0;
        std::size_t phase = 0;
        for (std::size_t j = 0; j < grid; ++j) {
            acc += reciprocal[j] * cos_table[phase];
            phase += k;
            if (phase >= grid) phase %= grid;
        }
        p[k] = acc / static_cast<double>(grid);
    }
    return SpectralDensity::with_bounds(std::move(p), 1.0 / f.upper_bound(), 1.0 / f.lower_bound(),
                                        f.sobolev_index(), f.grid_size());
}

}  // namespace blindpred
