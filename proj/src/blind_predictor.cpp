#include "blindpred/blind_predictor.hpp"

#include <algorithm>
#include <cmath>

#include "blindpred/errors.hpp"

namespace blindpred {

BlindPredictor fit(std::span<const double> samples, std::size_t window, std::optional<double> m) {
    RegularizedCovariance reg = regularize(estimate_covariance(samples, window), m);

    // hat Gamma_{O_K B_K}: entry (i, j) = r_hat(|j - i|), lags 1..2K-1.
    const auto k = static_cast<long>(window);
    Matrix cross(k, k);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) cross(i, j) = reg.base.at((j + k) - i);

    BlindPredictor out;
    out.coefficients.matrix = spd_solve(regularized_covariance_matrix(reg, window), cross);
    out.window = window;
    out.path_length = samples.size();
    out.alpha_hat = reg.alpha_hat;
    out.fhat_min = reg.fhat_min;
    out.m = reg.m;
    return out;
}

BlindPredictor fit(const ObservedPath& path, std::size_t window, std::optional<double> m) {
    return fit(path.samples(), window, m);
}

std::vector<double> predict(const BlindPredictor& predictor, std::span<const double> samples) {
    if (samples.size() < predictor.window) {
        throw Error(ErrorCode::WindowTooLarge, "path is shorter than the predictor window");
    }
    const Vector y = predictor.coefficients.apply(samples.subspan(samples.size() - predictor.window));
    return {y.begin(), y.end()};
}

std::vector<double> predict(const BlindPredictor& predictor, const ObservedPath& path) {
    return predict(predictor, path.samples());
}

std::size_t choose_window(std::size_t n, double s) {
    if (n <= 2) throw Error(ErrorCode::DomainError, "window rule needs N >= 3");
    if (s < 1.0) throw Error(ErrorCode::DomainError, "window rule needs s >= 1");
    const double nd = static_cast<double>(n);
    const double k = std::floor(std::pow(nd / std::log(nd), 1.0 / (2.0 * (2.0 * s + 3.0))));
    return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

TheoryConstants theory_constants(double m, double m_upper, double r0, double f_inv_sobolev) {
    if (!(m > 0.0)) throw Error(ErrorCode::DomainError, "m must be positive");
    if (!(m_upper >= m)) throw Error(ErrorCode::DomainError, "m' must be >= m");
    TheoryConstants c;
    c.r4 = 3.0 * r0 * r0;
    c.c0 = 4.0 * m_upper * (6.0 * m_upper / (m * m) + 4.0 / m + 2.0);
    c.c1 = c.c0 * std::pow(c.r4, 0.25) / std::sqrt(m);
    c.c2 = f_inv_sobolev * m_upper * (1.0 + m_upper / m);
    c.c3 = m_upper / m;
    c.c4 = (m_upper * m_upper / m) * (1.0 + m_upper / m);
    return c;
}

double bias_constant_from_proof(const TheoryConstants& consts, double f_inv_sobolev_s) {
    return consts.c4 * std::sqrt(f_inv_sobolev_s);
}

double risk_bound(std::size_t n, std::size_t window, const TheoryConstants& consts, double s) {
    const double k = static_cast<double>(window);
    const double variance = consts.c1 * k * k * std::sqrt(std::log(k)) / std::sqrt(static_cast<double>(n));
    const double bias = consts.c2 / std::pow(k, (2.0 * s - 1.0) / 2.0);
    return variance + bias;
}

double rate_exponent(double s) { return (2.0 * s - 1.0) / (2.0 * (2.0 * s + 3.0)); }

}  // namespace blindpred
