#include "blindpred/experiment_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "blindpred/covariance_estimation.hpp"
#include "blindpred/csv_io.hpp"
#include "blindpred/errors.hpp"
#include "blindpred/gaussian_simulator.hpp"
#include "blindpred/parallel.hpp"

namespace blindpred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TopEigen {
    double value = 0.0;
    Vector vector;  // normalized so that v' B v = 1
};

TopEigen top_generalized_eigen(const Matrix& a, const Matrix& b) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()), b);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "generalized eigenproblem failed");
    const long top = es.eigenvalues().size() - 1;
    return {std::max(0.0, es.eigenvalues()(top)), es.eigenvectors().col(top)};
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double relative_max_error(const Matrix& got, const Matrix& want) {
    const double scale = std::max(want.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

Matrix select(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<long>(i), static_cast<long>(j)) = m(static_cast<long>(rows[i]), static_cast<long>(cols[j]));
    return out;
}

void write_common_metadata(std::ostream& out, const ExperimentConfig& config, const std::string& command) {
    out << "# tool=blindpred version=" << kToolVersion << '\n';
    out << "# command=" << command << '\n';
    out << "# " << describe(config.model) << '\n';
    out << "# k_rule=" << config.k_rule.describe() << '\n';
    out << "# reps=" << config.reps << " seed=" << config.seed << " oracle_past=" << config.resolved_oracle_past()
        << '\n';
    out << "# m=" << format_double(config.resolved_m()) << (config.m ? " (configured)" : " (model)") << '\n';
    out << "# generator=" << kGeneratorId << '\n';
    if (config.oracle_substitute) out << "# oracle_substitute=1\n";
}

void write_theory_metadata(std::ostream& out, const TheoryReference& t) {
    out << "# m_lower=" << format_double(t.m) << " m_upper=" << format_double(t.m_upper) << '\n';
    out << "# C0=" << format_double(t.constants.c0) << " C1=" << format_double(t.constants.c1)
        << " C2=" << format_double(t.constants.c2) << " C3=" << format_double(t.constants.c3)
        << " C4=" << format_double(t.constants.c4) << " r4=" << format_double(t.constants.r4) << '\n';
    out << "# inv_sobolev_2s=" << format_double(t.inverse_sobolev_2s)
        << " inv_sobolev_s=" << format_double(t.inverse_sobolev_s)
        << " bias_constant_proof=" << format_double(t.bias_constant_proof) << '\n';
}

void write_risk_table(std::ostream& out, const RiskReport& report) {
    out << "N,K,L,reps,pointwise_risk,pointwise_hw,global_risk,global_hw,bias2,global_bias2,variance,variance_hw,"
           "mean_alpha,alpha_hw,alpha_positive_fraction,mean_sup_dev,sup_dev_hw,m_estimated,theorem_bound\n";
    for (const auto& r : report.rows) {
        out << r.n << ',' << r.window << ',' << r.oracle_past << ',' << r.reps << ','
            << format_double(r.pointwise.mean) << ',' << format_double(r.pointwise.half_width()) << ','
            << format_double(r.global.mean) << ',' << format_double(r.global.half_width()) << ','
            << format_double(r.bias2) << ',' << format_double(r.global_bias2) << ','
            << format_double(r.variance.mean) << ',' << format_double(r.variance.half_width()) << ','
            << format_double(r.alpha.mean) << ',' << format_double(r.alpha.half_width()) << ','
            << format_double(r.alpha_positive_fraction) << ',' << format_double(r.sup_dev.mean) << ','
            << format_double(r.sup_dev.half_width()) << ',' << r.m_estimated << ','
            << format_double(r.theorem_bound) << '\n';
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

std::size_t WindowRule::window_for(std::size_t n) const {
    if (kind == Kind::Fixed) return fixed;
    return choose_window(n, s);
}

std::string WindowRule::describe() const {
    if (kind == Kind::Fixed) return "fixed:" + std::to_string(fixed);
    return "sobolev:s=" + format_double(s);
}

std::size_t ExperimentConfig::resolved_oracle_past() const {
    if (oracle_past != 0) return oracle_past;
    std::size_t max_k = 1;
    for (auto n : n_grid) max_k = std::max(max_k, k_rule.window_for(n));
    return std::max<std::size_t>(512, 4 * max_k);
}

double ExperimentConfig::resolved_m() const {
    if (m) return *m;
    return covariance_to_spectrum(model.cov, model.sobolev_index).lower_bound();
}

double ExperimentConfig::sobolev_index() const {
    return k_rule.kind == WindowRule::Kind::Sobolev ? k_rule.s : model.sobolev_index;
}

void ExperimentConfig::validate() const {
    if (reps < 2) throw Error(ErrorCode::InvalidInput, "at least 2 replications are required");
    if (n_grid.empty()) throw Error(ErrorCode::InvalidInput, "the N grid is empty");
    if (k_rule.kind == WindowRule::Kind::Fixed && k_rule.fixed == 0) {
        throw Error(ErrorCode::InvalidInput, "fixed window must be positive");
    }
    std::size_t max_k = 1;
    for (auto n : n_grid) {
        const std::size_t k = k_rule.window_for(n);
        if (2 * k >= n) {
            throw Error(ErrorCode::InvalidInput,
                        "window " + std::to_string(k) + " violates 2K < N for N = " + std::to_string(n));
        }
        max_k = std::max(max_k, k);
    }
    if (resolved_oracle_past() < 4 * max_k) {
        throw Error(ErrorCode::InvalidInput, "oracle past must be at least 4 times the largest window");
    }
    if (m && !(*m > 0.0)) throw Error(ErrorCode::InvalidInput, "m must be positive");
}

Estimate estimate_mean(const std::vector<double>& values) {
    Estimate e;
    if (values.empty()) return e;
    const double r = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / r;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (r - 1.0) / r);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Risk

Matrix bias_matrix(const CovarianceSequence& cov, std::size_t window, std::size_t past) {
    if (past < window) throw Error(ErrorCode::InvalidInput, "oracle past shorter than the window");
    const Matrix ck = oracle_predictor(cov, window).matrix;
    const Matrix cl = finite_past_predictor(cov, past, window).matrix;
    Matrix diff = -cl;
    diff.bottomRows(static_cast<long>(window)) += ck;
    const IndexSet rows = index_range(-static_cast<long>(past), 0);
    const Matrix b = diff.transpose() * build_minor(cov, rows, rows) * diff;
    return 0.5 * (b + b.transpose());
}

TheoryReference theory_reference(const CovarianceSequence& cov, double s) {
    TheoryReference t;
    const SpectralDensity f = covariance_to_spectrum(cov, s);
    const SpectralDensity inv = inverse_spectrum(f, 256);
    t.m = f.lower_bound();
    t.m_upper = f.upper_bound();
    t.inverse_sobolev_2s = sobolev_norm(inv, 2.0 * s);
    t.inverse_sobolev_s = sobolev_norm(inv, s);
    t.constants = theory_constants(t.m, t.m_upper, cov.variance(), t.inverse_sobolev_2s);
    t.bias_constant_proof = bias_constant_from_proof(t.constants, t.inverse_sobolev_s);
    return t;
}

namespace {

struct Replication {
    Vector d;  // hat Y - P_L X
    Vector v;  // hat Y - P_K X
    double alpha = 0.0;
    double sup_dev = 0.0;
    bool m_estimated = false;
};

std::vector<Replication> run_replications(const ExperimentConfig& config, std::size_t n) {
    config.validate();
    const auto& cov = config.model.cov;
    const std::size_t k = config.k_rule.window_for(n);
    const std::size_t past = config.resolved_oracle_past();
    const double m = config.resolved_m();

    const GaussianSampler sampler(cov, n + past);
    const PredictorCoefficients oracle_l = finite_past_predictor(cov, past, k);
    const PredictorCoefficients oracle_k = oracle_predictor(cov, k);

    std::vector<Replication> reps(config.reps);
    parallel_for(config.reps, config.threads, [&](std::size_t i) {
        const std::vector<double> path = sampler.sample(replication_seed(config.seed, n, i));
        const std::span<const double> all(path);
        const std::span<const double> observed = all.subspan(past);
        const std::span<const double> last_k = all.subspan(all.size() - k);

        Replication& rep = reps[i];
        Vector y_hat;
        if (config.oracle_substitute) {
            y_hat = oracle_k.apply(last_k);
        } else {
            const BlindPredictor pred = fit(observed, k, m);
            y_hat = pred.coefficients.apply(last_k);
            rep.alpha = pred.alpha_hat;
            rep.m_estimated = pred.m.estimated;
        }
        rep.d = y_hat - oracle_l.apply(all.subspan(all.size() - past));
        rep.v = y_hat - oracle_k.apply(last_k);
        rep.sup_dev = sup_deviation(estimate_covariance(observed, k), cov);
    });
    return reps;
}

}  // namespace

RiskRow evaluate_grid_point(const ExperimentConfig& config, std::size_t n) {
    const std::vector<Replication> reps = run_replications(config, n);
    const auto& cov = config.model.cov;
    const std::size_t k = config.k_rule.window_for(n);
    const std::size_t past = config.resolved_oracle_past();

    RiskRow row;
    row.n = n;
    row.window = k;
    row.oracle_past = past;
    row.reps = config.reps;

    std::vector<double> d0(config.reps);
    std::vector<double> v0(config.reps);
    std::vector<double> residual(config.reps);
    std::vector<double> alphas(config.reps);
    std::vector<double> devs(config.reps);
    row.second_moment = Matrix::Zero(static_cast<long>(k), static_cast<long>(k));

    const Matrix bias = bias_matrix(cov, k, past);
    row.bias2 = bias(0, 0);

    std::size_t alpha_positive = 0;
    for (std::size_t i = 0; i < config.reps; ++i) {
        const auto& rep = reps[i];
        d0[i] = rep.d(0) * rep.d(0);
        v0[i] = rep.v(0) * rep.v(0);
        residual[i] = d0[i] - v0[i] - row.bias2;
        alphas[i] = rep.alpha;
        devs[i] = rep.sup_dev;
        if (rep.alpha > 0.0) ++alpha_positive;
        if (rep.m_estimated) ++row.m_estimated;
        row.second_moment += rep.d * rep.d.transpose();
    }
    row.second_moment /= static_cast<double>(config.reps);

    row.pointwise = estimate_mean(d0);
    row.variance = estimate_mean(v0);
    row.split_residual = estimate_mean(residual);
    row.alpha = estimate_mean(alphas);
    row.alpha_positive_fraction = static_cast<double>(alpha_positive) / static_cast<double>(config.reps);
    row.sup_dev = estimate_mean(devs);

    const IndexSet blind = index_range(0, static_cast<long>(k));
    const Matrix gamma_b = build_minor(cov, blind, blind);
    const TopEigen top = top_generalized_eigen(row.second_moment, gamma_b);
    std::vector<double> projected(config.reps);
    for (std::size_t i = 0; i < config.reps; ++i) {
        const double q = top.vector.dot(reps[i].d);
        projected[i] = q * q;
    }
    row.global = {top.value, estimate_mean(projected).std_error};
    row.global_bias2 = top_generalized_eigen(bias, gamma_b).value;

    if (k >= 2) {
        const double s = config.sobolev_index();
        row.theorem_bound = risk_bound(n, k, theory_reference(cov, s).constants, s);
    } else {
        row.theorem_bound = kNaN;
    }
    return row;
}

Estimate pointwise_risk(const ExperimentConfig& config, std::size_t target) {
    config.validate();
    const std::size_t n = config.n_grid.front();
    if (target >= config.k_rule.window_for(n)) throw Error(ErrorCode::InvalidInput, "target outside the blind block");
    const std::vector<Replication> reps = run_replications(config, n);
    std::vector<double> sq(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const double d = reps[i].d(static_cast<long>(target));
        sq[i] = d * d;
    }
    return estimate_mean(sq);
}

Estimate global_risk(const ExperimentConfig& config) {
    return evaluate_grid_point(config, config.n_grid.front()).global;
}

BiasVariance bias_variance_split(const ExperimentConfig& config) {
    const RiskRow row = evaluate_grid_point(config, config.n_grid.front());
    return {row.bias2, row.variance, row.pointwise, row.split_residual};
}

RiskReport run_risk(const ExperimentConfig& config) {
    config.validate();
    RiskReport report;
    report.theory = theory_reference(config.model.cov, config.sobolev_index());
    for (auto n : config.n_grid) report.rows.push_back(evaluate_grid_point(config, n));
    return report;
}

RateSweepReport rate_sweep(const ExperimentConfig& config) {
    if (config.n_grid.size() < 4) throw Error(ErrorCode::InvalidInput, "rate sweep needs at least 4 grid points");
    RateSweepReport out;
    out.risk = run_risk(config);
    out.theoretical_exponent = -rate_exponent(config.sobolev_index());

    const std::size_t p = out.risk.rows.size();
    std::vector<double> x(p);
    std::vector<double> y(p);
    std::vector<double> se(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto& row = out.risk.rows[i];
        const double n = static_cast<double>(row.n);
        x[i] = std::log(n / std::log(n));
        y[i] = 0.5 * std::log(row.global.mean);
        se[i] = 0.5 * row.global.std_error / row.global.mean;
    }
    const double x_mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(p);
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(p);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        sxx += (x[i] - x_mean) * (x[i] - x_mean);
        sxy += (x[i] - x_mean) * (y[i] - y_mean);
    }
    out.slope = sxy / sxx;
    out.intercept = y_mean - out.slope * x_mean;
    double var = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double w = (x[i] - x_mean) / sxx;
        var += w * w * se[i] * se[i];
    }
    out.slope_std_error = std::sqrt(var);
    return out;
}

// ---------------------------------------------------------------------------
// Concentration

double deviation_bound(double m_upper, std::size_t window, std::size_t n, double x) {
    const double nd = static_cast<double>(n);
    return 4.0 * m_upper * (std::sqrt((std::log(static_cast<double>(window)) + x) / nd) + x / nd);
}

ConcentrationReport concentration_check(const ExperimentConfig& config, const std::vector<double>& x_values) {
    config.validate();
    const auto& cov = config.model.cov;
    ConcentrationReport report;
    report.x_values = x_values;
    report.m_upper = covariance_to_spectrum(cov, config.model.sobolev_index).upper_bound();

    for (auto n : config.n_grid) {
        const std::size_t k = config.k_rule.window_for(n);
        const GaussianSampler sampler(cov, n);
        std::vector<double> devs(config.reps);
        parallel_for(config.reps, config.threads, [&](std::size_t i) {
            const std::vector<double> path = sampler.sample(replication_seed(config.seed, n, i));
            devs[i] = sup_deviation(estimate_covariance(path, k), cov);
        });
        ConcentrationRow row;
        row.n = n;
        row.window = k;
        row.median = quantile(devs, 0.5);
        row.q90 = quantile(devs, 0.9);
        row.median_ratio_to_4n = kNaN;
        for (double x : x_values) {
            const double b = deviation_bound(report.m_upper, k, n, x);
            const auto above = std::count_if(devs.begin(), devs.end(), [b](double d) { return d > b; });
            row.bound.push_back(b);
            row.exceedance.push_back(static_cast<double>(above) / static_cast<double>(devs.size()));
        }
        report.rows.push_back(std::move(row));
    }
    for (auto& row : report.rows) {
        for (const auto& other : report.rows) {
            if (other.n == 4 * row.n) row.median_ratio_to_4n = row.median / other.median;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Schur identities

bool SchurReport::passed() const noexcept {
    return max_schur_error <= tolerance && max_duality_error <= tolerance && max_norm_violation <= 1e-12 &&
           std::abs(worked_case - 0.5) <= 1e-12;
}

SchurReport schur_verify(const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed,
                         std::size_t threads) {
    if (sizes.empty()) throw Error(ErrorCode::InvalidInput, "no matrix sizes given");
    for (auto n : sizes)
        if (n < 2 || n > 64) throw Error(ErrorCode::InvalidInput, "matrix sizes must lie in [2, 64]");

    struct Trial {
        double schur = 0.0;
        double duality = 0.0;
        double violation = 0.0;
    };
    std::vector<Trial> results(trials);

    parallel_for(trials, threads, [&](std::size_t t) {
        std::mt19937_64 rng(replication_seed(seed, 0, t));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::normal_distribution<double> normal(0.0, 1.0);
        const std::size_t n = sizes[t % sizes.size()];

        // Random symbol bounded away from zero: a_0 > 2 sum |a_k|.
        const std::size_t degree = 1 + rng() % std::min<std::size_t>(n - 1, 8);
        std::vector<double> coeffs(degree + 1);
        double l1 = 0.0;
        for (std::size_t j = 1; j <= degree; ++j) {
            coeffs[j] = unit(rng);
            l1 += std::abs(coeffs[j]);
        }
        coeffs[0] = 2.0 * l1 + 0.1 + 0.45 * (unit(rng) + 1.0);
        const SpectralDensity f = SpectralDensity::from_coefficients(coeffs);
        const Matrix gamma = ToeplitzMatrix::from_covariance(CovarianceSequence(coeffs), n).dense();

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::size_t a_size = 1 + rng() % (n - 1);
        std::vector<std::size_t> a(perm.begin(), perm.begin() + static_cast<long>(a_size));
        std::vector<std::size_t> m(perm.begin() + static_cast<long>(a_size), perm.end());
        std::sort(a.begin(), a.end());
        std::sort(m.begin(), m.end());

        const Matrix gamma_a = select(gamma, a, a);
        const Matrix gamma_a_inv = spd_inverse(gamma_a);
        results[t].schur = relative_max_error(schur_complement_inverse(gamma, a), gamma_a_inv);

        const Matrix gamma_am = select(gamma, a, m);
        const Matrix q = select(gamma, m, m) - gamma_am.transpose() * gamma_a_inv * gamma_am;
        const Matrix lambda = spd_inverse(gamma);
        results[t].duality = relative_max_error(q, spd_inverse(select(lambda, m, m)));

        Matrix d(static_cast<long>(a.size()), static_cast<long>(m.size()));
        for (long i = 0; i < d.rows(); ++i)
            for (long j = 0; j < d.cols(); ++j) d(i, j) = normal(rng);
        const double plain = spectral_norm(d);
        const double warped = warped_operator_norm(d, gamma_a, select(gamma, m, m));
        const double ratio = f.lower_bound() / f.upper_bound();
        const double excess = std::max({0.0, ratio * plain - warped, warped - plain / ratio});
        results[t].violation = plain > 0.0 ? excess / plain : 0.0;
    });

    SchurReport report;
    report.trials = trials;
    for (const auto& r : results) {
        report.max_schur_error = std::max(report.max_schur_error, r.schur);
        report.max_duality_error = std::max(report.max_duality_error, r.duality);
        report.max_norm_violation = std::max(report.max_norm_violation, r.violation);
    }
    Matrix worked(2, 2);
    worked << 2.0, 1.0, 1.0, 2.0;
    report.worked_case = schur_complement_inverse(worked, {0})(0, 0);
    return report;
}

// ---------------------------------------------------------------------------
// Estimator-level diagnostics

Estimate coefficient_error(const CovarianceSequence& cov, std::size_t n, std::size_t window, std::size_t reps,
                           std::uint64_t seed, std::optional<double> m, std::size_t threads) {
    const GaussianSampler sampler(cov, n);
    const Matrix oracle = oracle_predictor(cov, window).matrix;
    std::vector<double> errors(reps);
    parallel_for(reps, threads, [&](std::size_t i) {
        const std::vector<double> path = sampler.sample(replication_seed(seed, n, i));
        const BlindPredictor pred = fit(path, window, m);
        errors[i] = (pred.coefficients.matrix - oracle).cwiseAbs().mean();
    });
    return estimate_mean(errors);
}

std::vector<EstimatorDiagnostics> estimator_diagnostics(const CovarianceSequence& cov, std::size_t n,
                                                        std::size_t window, std::size_t reps, std::uint64_t seed,
                                                        double m, std::size_t threads) {
    const GaussianSampler sampler(cov, n);
    std::vector<EstimatorDiagnostics> out(reps);
    parallel_for(reps, threads, [&](std::size_t i) {
        const std::vector<double> path = sampler.sample(replication_seed(seed, n, i));
        const RegularizedCovariance reg = regularize(estimate_covariance(path, window), m);
        const Matrix tilde = regularized_covariance_matrix(reg, window).dense();
        Eigen::SelfAdjointEigenSolver<Matrix> es(tilde, Eigen::EigenvaluesOnly);

        const std::size_t degree = std::max(window, cov.max_lag());
        std::vector<double> diff(degree + 1);
        for (std::size_t p = 0; p <= degree; ++p) {
            const double est = p <= window ? reg.base.r_hat[p] : 0.0;
            diff[p] = est - cov.at(static_cast<long>(p));
        }
        const TrigPolynomial error(std::move(diff));

        auto& d = out[i];
        d.min_eigenvalue = es.eigenvalues().minCoeff();
        d.alpha_hat = reg.alpha_hat;
        d.fhat_min = reg.fhat_min;
        d.sup_dev = sup_deviation(reg.base, cov);
        d.spectral_error = std::max(error.maximum().value, -error.minimum().value);
    });
    return out;
}

// ---------------------------------------------------------------------------
// CSV

void write_risk_csv(std::ostream& out, const ExperimentConfig& config, const RiskReport& report,
                    const std::string& command) {
    write_common_metadata(out, config, command);
    write_theory_metadata(out, report.theory);
    write_risk_table(out, report);
}

void write_rate_sweep_csv(std::ostream& out, const ExperimentConfig& config, const RateSweepReport& report) {
    write_common_metadata(out, config, "rate-sweep");
    write_theory_metadata(out, report.risk.theory);
    out << "# slope=" << format_double(report.slope) << " slope_se=" << format_double(report.slope_std_error)
        << " intercept=" << format_double(report.intercept)
        << " theoretical_exponent=" << format_double(report.theoretical_exponent) << '\n';
    write_risk_table(out, report.risk);
}

void write_concentration_csv(std::ostream& out, const ExperimentConfig& config, const ConcentrationReport& report) {
    write_common_metadata(out, config, "concentration");
    out << "# m_upper=" << format_double(report.m_upper) << '\n';
    out << "N,K,median_sup_dev,q90_sup_dev,median_ratio_to_4N";
    for (double x : report.x_values) {
        out << ",bound_x=" << format_double(x) << ",exceedance_x=" << format_double(x);
    }
    out << '\n';
    for (const auto& r : report.rows) {
        out << r.n << ',' << r.window << ',' << format_double(r.median) << ',' << format_double(r.q90) << ','
            << format_double(r.median_ratio_to_4n);
        for (std::size_t j = 0; j < r.bound.size(); ++j) {
            out << ',' << format_double(r.bound[j]) << ',' << format_double(r.exceedance[j]);
        }
        out << '\n';
    }
}

void write_schur_csv(std::ostream& out, const SchurReport& report, std::uint64_t seed,
                     const std::vector<std::size_t>& sizes) {
    out << "# tool=blindpred version=" << kToolVersion << '\n';
    out << "# command=schur-verify\n";
    out << "# seed=" << seed << " sizes=";
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? ";" : "") << sizes[i];
    out << '\n';
    out << "check,value,tolerance,passed\n";
    const auto line = [&](const char* name, double value, double tol, bool ok) {
        out << name << ',' << format_double(value) << ',' << format_double(tol) << ',' << (ok ? 1 : 0) << '\n';
    };
    line("schur_identity_max_rel_error", report.max_schur_error, report.tolerance,
         report.max_schur_error <= report.tolerance);
    line("error_operator_duality_max_rel_error", report.max_duality_error, report.tolerance,
         report.max_duality_error <= report.tolerance);
    line("warped_norm_equivalence_max_violation", report.max_norm_violation, 1e-12,
         report.max_norm_violation <= 1e-12);
    line("worked_2x2_schur_value", report.worked_case, 1e-12, std::abs(report.worked_case - 0.5) <= 1e-12);
    out << "trials," << report.trials << ",,\n";
}

}  // namespace blindpred
