#pragma once

/**
 * @file experiment_harness.hpp
 * @brief Monte Carlo estimation of prediction risks, rate sweeps and diagnostics.
 *
 * One replication simulates a path of length N + L, fits the blind predictor
 * on the N most recent samples and compares its predictions of X_0..X_{K-1}
 * with the known-covariance projection onto the last L samples, which stands
 * in for the infinite past. The same path feeds both the fit and the
 * prediction.
 *
 * Replication i at grid point N uses seed replication_seed(master, N, i);
 * reductions run in index order, so results do not depend on the thread count.
 */

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blindpred/blind_predictor.hpp"
#include "blindpred/model_io.hpp"
#include "blindpred/toeplitz_algebra.hpp"

namespace blindpred {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Either a fixed window or the rate-optimal rule for a Sobolev index s.
struct WindowRule {
    enum class Kind { Fixed, Sobolev };
    Kind kind = Kind::Fixed;
    std::size_t fixed = 1;
    double s = 1.0;

    static WindowRule fixed_window(std::size_t k) { return {Kind::Fixed, k, 1.0}; }
    static WindowRule sobolev(double s) { return {Kind::Sobolev, 0, s}; }

    [[nodiscard]] std::size_t window_for(std::size_t n) const;
    [[nodiscard]] std::string describe() const;
};

struct ExperimentConfig {
    ProcessModel model{"white", CovarianceSequence({1.0}), 1.0};
    std::vector<std::size_t> n_grid;
    WindowRule k_rule;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::size_t oracle_past = 0;  ///< 0 selects max(512, 4 max K)
    std::optional<double> m;      ///< lower spectral bound; defaults to the model's
    std::size_t threads = 1;
    bool oracle_substitute = false;  ///< debug: known-covariance K-window predictor instead of the blind one

    /// @throws Error(InvalidInput) when R < 2, L < 4 max K, the grid is empty or 2K(N) >= N.
    void validate() const;
    [[nodiscard]] std::size_t resolved_oracle_past() const;
    [[nodiscard]] double resolved_m() const;
    [[nodiscard]] double sobolev_index() const;
};

/// Monte Carlo mean with its standard error.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    /// Normal-approximation 95% half-width.
    [[nodiscard]] double half_width() const noexcept { return 1.96 * std_error; }
};

[[nodiscard]] Estimate estimate_mean(const std::vector<double>& values);

/// Everything measured at one grid point.
struct RiskRow {
    std::size_t n = 0;
    std::size_t window = 0;
    std::size_t oracle_past = 0;
    std::size_t reps = 0;
    Estimate pointwise;        ///< E[(hat Y_0 - P_L X_0)^2]
    Estimate global;           ///< largest eigenvalue of Gamma_B^{-1/2} E[d d'] Gamma_B^{-1/2}
    double bias2 = 0.0;        ///< E[(P_K X_0 - P_L X_0)^2], exact
    double global_bias2 = 0.0; ///< same supremum for the bias matrix alone
    Estimate variance;         ///< E[(hat Y_0 - P_K X_0)^2]
    Estimate split_residual;   ///< mean of (d_0^2 - v_0^2) - bias2; zero up to the cross term
    Estimate alpha;
    double alpha_positive_fraction = 0.0;
    Estimate sup_dev;
    std::size_t m_estimated = 0;  ///< replications that used the fallback lower bound
    double theorem_bound = 0.0;   ///< NaN for K < 2
    Matrix second_moment;         ///< E[d d'], K x K
};

/// Runs all replications at one grid point.
[[nodiscard]] RiskRow evaluate_grid_point(const ExperimentConfig& config, std::size_t n);

/// Pointwise risk for target X_j at the first grid point.
[[nodiscard]] Estimate pointwise_risk(const ExperimentConfig& config, std::size_t target);
[[nodiscard]] Estimate global_risk(const ExperimentConfig& config);

struct BiasVariance {
    double bias2 = 0.0;
    Estimate variance;
    Estimate pointwise;
    Estimate residual;
};
[[nodiscard]] BiasVariance bias_variance_split(const ExperimentConfig& config);

/// Exact E[(P_K X_j - P_L X_j)(P_K X_i - P_L X_i)], K x K.
[[nodiscard]] Matrix bias_matrix(const CovarianceSequence& cov, std::size_t window, std::size_t past);

struct TheoryReference {
    TheoryConstants constants;
    double m = 0.0;
    double m_upper = 0.0;
    double inverse_sobolev_2s = 0.0;  ///< ||1/f||_{W_2s}
    double inverse_sobolev_s = 0.0;   ///< ||1/f||_{W_s}
    double bias_constant_proof = 0.0; ///< C4 sqrt(||1/f||_{W_s})
};
[[nodiscard]] TheoryReference theory_reference(const CovarianceSequence& cov, double s);

struct RiskReport {
    std::vector<RiskRow> rows;
    TheoryReference theory;
};
[[nodiscard]] RiskReport run_risk(const ExperimentConfig& config);

struct RateSweepReport {
    RiskReport risk;
    double slope = 0.0;
    double slope_std_error = 0.0;
    double intercept = 0.0;
    double theoretical_exponent = 0.0;  ///< -(2s-1)/(2(2s+3))
};
/// Least-squares slope of log sqrt(global risk) against log(N / log N).
/// @throws Error(InvalidInput) for fewer than 4 grid points.
[[nodiscard]] RateSweepReport rate_sweep(const ExperimentConfig& config);

struct ConcentrationRow {
    std::size_t n = 0;
    std::size_t window = 0;
    double median = 0.0;
    double q90 = 0.0;
    double median_ratio_to_4n = 0.0;  ///< median(N) / median(4N), NaN when 4N is not on the grid
    std::vector<double> exceedance;   ///< fraction above the deviation bound, one per x
    std::vector<double> bound;        ///< 4 m' (sqrt((log K + x)/N) + x/N)
};
struct ConcentrationReport {
    std::vector<double> x_values;
    double m_upper = 0.0;
    std::vector<ConcentrationRow> rows;
};
[[nodiscard]] ConcentrationReport concentration_check(const ExperimentConfig& config,
                                                      const std::vector<double>& x_values);

/// 4 m' (sqrt((log K + x) / N) + x / N).
[[nodiscard]] double deviation_bound(double m_upper, std::size_t window, std::size_t n, double x);

struct SchurReport {
    std::size_t trials = 0;
    double max_schur_error = 0.0;      ///< relative, Gamma_A^{-1} vs the Lambda Schur complement
    double max_duality_error = 0.0;    ///< relative, Q(M|A) vs Lambda_M^{-1}
    double max_norm_violation = 0.0;   ///< relative excess outside (m/m', m'/m) ||D||
    double worked_case = 0.0;          ///< S for Gamma = [[2,1],[1,2]], A = {0}
    double tolerance = 1e-8;
    [[nodiscard]] bool passed() const noexcept;
};
/// @throws Error(InvalidInput) for sizes outside [2, 64].
[[nodiscard]] SchurReport schur_verify(const std::vector<std::size_t>& sizes, std::size_t trials,
                                       std::uint64_t seed, std::size_t threads = 1);

/// Mean over replications of the mean absolute entrywise gap between the fitted and known-covariance coefficients.
[[nodiscard]] Estimate coefficient_error(const CovarianceSequence& cov, std::size_t n, std::size_t window,
                                         std::size_t reps, std::uint64_t seed, std::optional<double> m,
                                         std::size_t threads = 1);

/// Per-replication quantities of the covariance estimator.
struct EstimatorDiagnostics {
    double min_eigenvalue = 0.0;  ///< of tilde Gamma_{O_K}
    double alpha_hat = 0.0;
    double fhat_min = 0.0;
    double sup_dev = 0.0;
    double spectral_error = 0.0;  ///< grid max |f_hat_K - f|
};
[[nodiscard]] std::vector<EstimatorDiagnostics> estimator_diagnostics(const CovarianceSequence& cov, std::size_t n,
                                                                      std::size_t window, std::size_t reps,
                                                                      std::uint64_t seed, double m,
                                                                      std::size_t threads = 1);

// CSV writers. Metadata lines start with '#'.
void write_risk_csv(std::ostream& out, const ExperimentConfig& config, const RiskReport& report,
                    const std::string& command);
void write_rate_sweep_csv(std::ostream& out, const ExperimentConfig& config, const RateSweepReport& report);
void write_concentration_csv(std::ostream& out, const ExperimentConfig& config, const ConcentrationReport& report);
void write_schur_csv(std::ostream& out, const SchurReport& report, std::uint64_t seed,
                     const std::vector<std::size_t>& sizes);

}  // namespace blindpred
