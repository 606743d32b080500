#include "blindpred/gaussian_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <random>

#include <unsupported/Eigen/FFT>

#include "blindpred/errors.hpp"

namespace blindpred {

namespace {

constexpr double kClipThreshold = 1e-10;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::size_t next_power_of_two(std::size_t x) {
    std::size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ splitmix64(index + kGolden));
}

GaussianSampler::GaussianSampler(const CovarianceSequence& cov, std::size_t n, SimulationMethod method)
    : n_(n), method_(method) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "path length must be positive");

    if (method != SimulationMethod::DenseCholesky) {
        const std::size_t m = next_power_of_two(2 * (n + cov.max_lag()));
        std::vector<std::complex<double>> row(m, 0.0);
        for (std::size_t k = 0; k <= m / 2; ++k) {
            // Lags < n fix the law of the first n samples; beyond that, zero-extension is admissible.
            double r = 0.0;
            if (k < n) {
                r = cov.at(static_cast<long>(k));
            } else if (k <= cov.max_lag()) {
                r = cov.values()[k];
            }
            row[k] = r;
            if (k > 0 && k < m / 2) row[m - k] = r;
        }
        Eigen::FFT<double> fft;
        std::vector<std::complex<double>> eig;
        fft.fwd(eig, row);
        double max_eig = 0.0;
        double min_eig = 0.0;
        for (const auto& e : eig) {
            max_eig = std::max(max_eig, e.real());
            min_eig = std::min(min_eig, e.real());
        }
        if (max_eig > 0.0 && min_eig >= -kClipThreshold * max_eig) {
            scaled_sqrt_eigs_.resize(m);
            for (std::size_t j = 0; j < m; ++j) {
                scaled_sqrt_eigs_[j] = std::sqrt(std::max(0.0, eig[j].real()) / static_cast<double>(m));
            }
            method_ = SimulationMethod::CirculantEmbedding;
            if (min_eig < 0.0) {
                clipped_ = -min_eig / max_eig;
                std::clog << "warning: circulant embedding clipped negative eigenvalues (relative size " << clipped_
                          << ")\n";
            }
            return;
        }
        if (method == SimulationMethod::CirculantEmbedding) {
            throw Error(ErrorCode::NotPositiveDefinite, "circulant embedding has negative eigenvalues");
        }
    }

    const Matrix gamma = ToeplitzMatrix::from_covariance(cov, n).dense();
    Eigen::LLT<Matrix> llt(gamma);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "dense Cholesky of the covariance failed");
    }
    cholesky_ = llt.matrixL();
    method_ = SimulationMethod::DenseCholesky;
}

std::vector<double> GaussianSampler::sample(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(n_);

    if (method_ == SimulationMethod::DenseCholesky) {
        Vector z(static_cast<long>(n_));
        for (long i = 0; i < z.size(); ++i) z(i) = normal(rng);
        const Vector x = cholesky_.triangularView<Eigen::Lower>() * z;
        std::copy(x.begin(), x.end(), out.begin());
        return out;
    }

    const std::size_t m = scaled_sqrt_eigs_.size();
    std::vector<std::complex<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        w[j] = std::complex<double>(re, im) * scaled_sqrt_eigs_[j];
    }
    thread_local Eigen::FFT<double> fft;
    std::vector<std::complex<double>> y;
    fft.fwd(y, w);
    for (std::size_t i = 0; i < n_; ++i) out[i] = y[i].real();
    return out;
}

std::vector<double> simulate_samples(const SimulationSpec& spec) {
    return GaussianSampler(spec.cov, spec.n, spec.method).sample(spec.seed);
}

ObservedPath simulate_path(const SimulationSpec& spec) { return ObservedPath(simulate_samples(spec)); }

GaussianityReport gaussianity_check(std::span<const std::vector<double>> paths, const CovarianceSequence& cov) {
    if (paths.size() < 100) throw Error(ErrorCode::InvalidInput, "gaussianity check needs >= 100 replications");
    GaussianityReport rep;
    rep.replications = paths.size();
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
    for (const auto& p : paths) {
        if (p.empty()) throw Error(ErrorCode::InvalidInput, "empty path");
        const double x = p.front();
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    const double r = static_cast<double>(paths.size());
    const double mean = s1 / r;
    const double var = s2 / r - mean * mean;
    const double third = s3 / r - 3.0 * mean * s2 / r + 2.0 * mean * mean * mean;
    rep.fourth_moment = s4 / r;
    rep.expected_fourth_moment = 3.0 * cov.variance() * cov.variance();
    rep.skewness = var > 0.0 ? third / std::pow(var, 1.5) : 0.0;
    rep.passed = std::abs(rep.fourth_moment / rep.expected_fourth_moment - 1.0) <= 0.1 && std::abs(rep.skewness) <= 0.1;
    return rep;
}

}  // namespace blindpred
