#pragma once

/**
 * @file gaussian_simulator.hpp
 * @brief Exact sampling of zero-mean stationary Gaussian paths.
 *
 * Circulant embedding: the covariance is embedded in a circulant of size m
 * (smallest power of two >= 2 (N + P)); with eigenvalues lambda of the
 * circulant and W a standard complex normal vector, the real part of
 * FFT(sqrt(lambda / m) W) restricted to its first N entries is N(0, Gamma_N).
 * When the embedding is not nonnegative definite the sampler falls back to a
 * dense Cholesky factor of Gamma_N.
 *
 * Random numbers come from std::mt19937_64 and std::normal_distribution<double>
 * (generator id: kGeneratorId). Per-replication seeds are derived with
 * replication_seed(), so any schedule of replications gives the same ensemble.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "blindpred/covariance_estimation.hpp"
#include "blindpred/spectral_model.hpp"
#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred {

inline constexpr std::string_view kGeneratorId = "mt19937_64/normal_distribution";

enum class SimulationMethod { Auto, CirculantEmbedding, DenseCholesky };

struct SimulationSpec {
    CovarianceSequence cov;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    SimulationMethod method = SimulationMethod::Auto;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/**
 * Seed for replication `index` of stream `stream` (e.g. a grid point):
 * splitmix64(splitmix64(master ^ splitmix64(stream)) ^ splitmix64(index + golden)).
 */
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

/// Precomputes the embedding (or Cholesky factor) once for many draws.
class GaussianSampler {
public:
    /// @throws Error(NotPositiveDefinite) if no method can represent the covariance.
    GaussianSampler(const CovarianceSequence& cov, std::size_t n, SimulationMethod method = SimulationMethod::Auto);

    /// Deterministic given the seed; safe to call concurrently.
    [[nodiscard]] std::vector<double> sample(std::uint64_t seed) const;

    [[nodiscard]] SimulationMethod method() const noexcept { return method_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::size_t embedding_size() const noexcept { return scaled_sqrt_eigs_.size(); }
    /// Largest |lambda| / max(lambda) among clipped negative eigenvalues (0 if none).
    [[nodiscard]] double clipped_fraction() const noexcept { return clipped_; }

private:
    std::size_t n_;
    SimulationMethod method_;
    std::vector<double> scaled_sqrt_eigs_;
    Matrix cholesky_;
    double clipped_ = 0.0;
};

/// Raw samples; N >= 1.
[[nodiscard]] std::vector<double> simulate_samples(const SimulationSpec& spec);
/// @throws Error(InvalidInput) when N < 2 (an observed path needs two samples).
[[nodiscard]] ObservedPath simulate_path(const SimulationSpec& spec);

struct GaussianityReport {
    std::size_t replications = 0;
    double fourth_moment = 0.0;
    double expected_fourth_moment = 0.0;  ///< 3 r_0^2
    double skewness = 0.0;
    bool passed = false;  ///< fourth moment within 10% and |skewness| <= 0.1
};

/// Moments of the first sample across replications. @throws Error(InvalidInput) for fewer than 100 paths.
[[nodiscard]] GaussianityReport gaussianity_check(std::span<const std::vector<double>> paths,
                                                  const CovarianceSequence& cov);

}  // namespace blindpred
