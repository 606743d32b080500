#include "blindpred/covariance_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blindpred/errors.hpp"

namespace blindpred {

ObservedPath::ObservedPath(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw Error(ErrorCode::InvalidInput, "an observed path needs at least 2 samples");
    for (double x : samples_)
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "observed path has a non-finite sample");
}

std::span<const double> ObservedPath::last(std::size_t count) const {
    if (count > samples_.size()) {
        throw Error(ErrorCode::WindowTooLarge, "requested " + std::to_string(count) + " samples from a path of " +
                                                   std::to_string(samples_.size()));
    }
    return std::span<const double>(samples_).subspan(samples_.size() - count);
}

double empirical_autocovariance(std::span<const double> samples, std::size_t p) {
    const std::size_t n = samples.size();
    if (p >= n) {
        throw Error(ErrorCode::LagTooLarge, "lag " + std::to_string(p) + " needs more than " + std::to_string(n) +
                                                " samples");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + p < n; ++k) acc += samples[k] * samples[k + p];
    return acc / static_cast<double>(n - p);
}

double empirical_autocovariance(const ObservedPath& path, std::size_t p) {
    return empirical_autocovariance(path.samples(), p);
}

double EmpiricalCovariance::at(long lag) const {
    const auto k = static_cast<std::size_t>(std::labs(lag));
    if (k >= r_hat.size()) throw Error(ErrorCode::LagOutOfRange, "lag " + std::to_string(k) + " not estimated");
    return r_hat[k];
}

EmpiricalCovariance estimate_covariance(std::span<const double> samples, std::size_t window) {
    if (window == 0) throw Error(ErrorCode::DomainError, "window must be positive");
    if (2 * window >= samples.size()) {
        throw Error(ErrorCode::WindowTooLarge, "window " + std::to_string(window) + " needs 2K < N = " +
                                                   std::to_string(samples.size()));
    }
    EmpiricalCovariance est;
    est.window = window;
    est.path_length = samples.size();
    est.r_hat.resize(2 * window + 1);
    for (std::size_t p = 0; p <= 2 * window; ++p) est.r_hat[p] = empirical_autocovariance(samples, p);
    return est;
}

EmpiricalCovariance estimate_covariance(const ObservedPath& path, std::size_t window) {
    return estimate_covariance(path.samples(), window);
}

TrigPolynomial empirical_spectral_density(const EmpiricalCovariance& est) {
    if (est.r_hat.size() < est.window + 1) throw Error(ErrorCode::LagOutOfRange, "lags 0..K are required");
    return TrigPolynomial(std::vector<double>(est.r_hat.begin(), est.r_hat.begin() + static_cast<long>(est.window) + 1));
}

double regularization_shift(double fhat_min, double m) {
    if (!(m > 0.0)) throw Error(ErrorCode::DomainError, "lower bound m must be positive");
    double alpha = 0.0;
    if (fhat_min <= 0.0) alpha -= fhat_min;
    if (fhat_min <= m / 4.0) alpha += m / 4.0;
    return alpha;
}

RegularizedCovariance regularize(EmpiricalCovariance est, std::optional<double> m, std::size_t grid_size) {
    RegularizedCovariance reg;
    reg.fhat_min = empirical_spectral_density(est).minimum(grid_size).value;
    if (m) {
        reg.m = {*m, false};
    } else {
        reg.m = {std::max(reg.fhat_min, kFallbackLowerBound), true};
    }
    reg.alpha_hat = regularization_shift(reg.fhat_min, reg.m.value);
    reg.base = std::move(est);
    return reg;
}

ToeplitzMatrix regularized_covariance_matrix(const RegularizedCovariance& reg, std::size_t window) {
    if (window == 0 || window > reg.base.r_hat.size()) {
        throw Error(ErrorCode::LagOutOfRange, "window exceeds the estimated lags");
    }
    std::vector<double> row(reg.base.r_hat.begin(), reg.base.r_hat.begin() + static_cast<long>(window));
    row[0] += reg.alpha_hat;
    return ToeplitzMatrix(std::move(row));
}

double sup_deviation(const EmpiricalCovariance& est, const CovarianceSequence& truth) {
    double worst = 0.0;
    for (std::size_t p = 0; p < est.r_hat.size(); ++p) {
        worst = std::max(worst, std::abs(est.r_hat[p] - truth.at(static_cast<long>(p))));
    }
    return worst;
}

}  // namespace blindpred
