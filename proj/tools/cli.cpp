#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "blindpred/blind_predictor.hpp"
#include "blindpred/csv_io.hpp"
#include "blindpred/errors.hpp"
#include "blindpred/experiment_harness.hpp"
#include "blindpred/gaussian_simulator.hpp"
#include "blindpred/model_io.hpp"

namespace blindpred::cli {

namespace {

struct Options {
    std::string model = "model=white";
    std::size_t n = 0;
    std::vector<std::size_t> grid;
    std::size_t k = 0;
    std::string k_rule;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::size_t oracle_past = 0;
    std::string out;
    std::size_t threads = 1;
    std::optional<double> m;
    bool debug_oracle = false;

    std::string input;
    std::vector<double> x_values{std::log(2.0), 3.0};
    std::vector<std::size_t> sizes{2, 4, 8, 16, 32, 64};
    std::size_t trials = 200;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_model_options(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "model file or shorthand, e.g. \"ar1,phi=0.6\"");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out, "output CSV (default: stdout)");
}

void add_window_options(CLI::App* sub, Options& o) {
    auto* k = sub->add_option("--k", o.k, "fixed window K")->check(CLI::PositiveNumber);
    auto* rule = sub->add_option("--k-rule", o.k_rule, "window rule, s=<Sobolev index>");
    k->excludes(rule);
    sub->add_option("--m", o.m, "lower spectral bound used for regularization");
}

void add_experiment_options(CLI::App* sub, Options& o) {
    add_model_options(sub, o);
    add_window_options(sub, o);
    auto* n = sub->add_option("--n", o.n, "single path length");
    auto* grid = sub->add_option("--grid", o.grid, "comma-separated path lengths")->delimiter(',');
    n->excludes(grid);
    sub->add_option("--reps", o.reps, "Monte Carlo replications");
    sub->add_option("--oracle-past", o.oracle_past, "past length L of the reference predictor (0: automatic)");
    sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
    sub->add_flag("--debug-oracle", o.debug_oracle, "use the known-covariance window predictor instead of the blind one");
}

double parse_rule(const std::string& text) {
    if (text.rfind("s=", 0) != 0) throw UsageError("--k-rule expects s=<value>, got '" + text + "'");
    try {
        std::size_t used = 0;
        const double s = std::stod(text.substr(2), &used);
        if (used != text.size() - 2) throw std::invalid_argument(text);
        return s;
    } catch (const std::logic_error&) {
        throw UsageError("--k-rule expects s=<value>, got '" + text + "'");
    }
}

WindowRule window_rule(const Options& o, double model_s) {
    if (o.k != 0) return WindowRule::fixed_window(o.k);
    if (!o.k_rule.empty()) return WindowRule::sobolev(parse_rule(o.k_rule));
    return WindowRule::sobolev(model_s);
}

ExperimentConfig experiment_config(const Options& o) {
    ExperimentConfig c;
    c.model = load_model(o.model);
    if (o.n != 0) c.n_grid = {o.n};
    else c.n_grid = o.grid;
    if (c.n_grid.empty()) throw UsageError("one of --n or --grid is required");
    c.k_rule = window_rule(o, c.model.sobolev_index);
    c.reps = o.reps;
    c.seed = o.seed;
    c.oracle_past = o.oracle_past;
    c.m = o.m;
    c.threads = o.threads;
    c.oracle_substitute = o.debug_oracle;
    c.validate();
    return c;
}

/// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& write) {
    if (o.out.empty()) {
        write(out);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + o.out);
    write(file);
    if (!file) throw Error(ErrorCode::InvalidInput, "write failed for " + o.out);
}

int cmd_simulate(const Options& o, std::ostream& out) {
    if (o.n == 0) throw UsageError("simulate requires --n");
    const ProcessModel model = load_model(o.model);
    const GaussianSampler sampler(model.cov, o.n);
    const std::vector<double> path = sampler.sample(o.seed);
    emit(o, out, [&](std::ostream& os) {
        os << "# tool=blindpred version=" << kToolVersion << '\n';
        os << "# command=simulate\n";
        os << "# " << describe(model) << '\n';
        os << "# n=" << o.n << " seed=" << o.seed << '\n';
        os << "# method=" << (sampler.method() == SimulationMethod::DenseCholesky ? "dense_cholesky" : "circulant_embedding")
           << " generator=" << kGeneratorId << '\n';
        write_path_csv(os, path);
    });
    return 0;
}

int cmd_predict(const Options& o, std::ostream& out) {
    if (o.input.empty()) throw UsageError("predict requires --input");
    const std::vector<double> samples = read_path_csv_file(o.input);
    if (samples.size() < 3) throw Error(ErrorCode::InvalidInput, "input path needs at least 3 samples");
    std::size_t k = o.k;
    if (k == 0) k = choose_window(samples.size(), o.k_rule.empty() ? 1.0 : parse_rule(o.k_rule));
    const BlindPredictor pred = fit(samples, k, o.m);
    const std::vector<double> y = predict(pred, samples);

    if (!o.out.empty()) {
        emit(o, out, [&](std::ostream& os) {
            os << "# tool=blindpred version=" << kToolVersion << '\n';
            os << "# command=predict input=" << o.input << '\n';
            os << "# N=" << samples.size() << " K=" << k << " m=" << format_double(pred.m.value)
               << (pred.m.estimated ? " (estimated)" : " (configured)") << " alpha_hat=" << format_double(pred.alpha_hat)
               << '\n';
            os << "# rows: observed X_{-K}..X_{-1}; columns: targets X_0..X_{K-1}\n";
            write_predictor_csv(os, pred.coefficients.matrix);
        });
    }
    out << "# tool=blindpred version=" << kToolVersion << '\n';
    out << "# command=predict N=" << samples.size() << " K=" << k << '\n';
    out << "target,prediction\n";
    for (std::size_t j = 0; j < y.size(); ++j) out << j << ',' << format_double(y[j]) << '\n';
    return 0;
}

int cmd_risk(const Options& o, std::ostream& out, const std::string& command) {
    const ExperimentConfig config = experiment_config(o);
    const RiskReport report = run_risk(config);
    emit(o, out, [&](std::ostream& os) { write_risk_csv(os, config, report, command); });
    return 0;
}

int cmd_rate_sweep(const Options& o, std::ostream& out) {
    const ExperimentConfig config = experiment_config(o);
    const RateSweepReport report = rate_sweep(config);
    emit(o, out, [&](std::ostream& os) { write_rate_sweep_csv(os, config, report); });
    return 0;
}

int cmd_concentration(const Options& o, std::ostream& out) {
    const ExperimentConfig config = experiment_config(o);
    const ConcentrationReport report = concentration_check(config, o.x_values);
    emit(o, out, [&](std::ostream& os) { write_concentration_csv(os, config, report); });
    return 0;
}

int cmd_schur_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const SchurReport report = schur_verify(o.sizes, o.trials, o.seed, o.threads);
    emit(o, out, [&](std::ostream& os) { write_schur_csv(os, report, o.seed, o.sizes); });
    if (!report.passed()) {
        err << "schur-verify: verification failed\n";
        return 2;
    }
    return 0;
}

}  // namespace

void write_predictor_csv(std::ostream& out, const Matrix& coefficients) {
    out << coefficients.rows() << '\n';
    for (long i = 0; i < coefficients.rows(); ++i) {
        for (long j = 0; j < coefficients.cols(); ++j) {
            if (j) out << ',';
            out << format_double(coefficients(i, j));
        }
        out << '\n';
    }
}

Matrix read_predictor_csv(std::istream& in) {
    std::string line;
    long k = -1;
    std::ostringstream rest;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (k < 0) {
            try {
                std::size_t used = 0;
                k = std::stol(line, &used);
                if (used != line.size() || k <= 0) throw std::invalid_argument(line);
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::InvalidInput, "predictor CSV: expected K, got '" + line + "'");
            }
            continue;
        }
        rest << line << '\n';
    }
    if (k < 0) throw Error(ErrorCode::InvalidInput, "predictor CSV: missing K row");
    std::istringstream body(rest.str());
    Matrix m = read_matrix_csv(body);
    if (m.rows() != k || m.cols() != k) throw Error(ErrorCode::InvalidInput, "predictor CSV: matrix is not K x K");
    return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blind linear prediction of stationary Gaussian time series", "blindpred"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;

    auto* simulate = app.add_subcommand("simulate", "simulate one path, one sample per line");
    add_model_options(simulate, o);
    simulate->add_option("--n", o.n, "path length")->required();

    auto* predict_cmd = app.add_subcommand("predict", "fit the blind predictor to a path and predict the next K values");
    predict_cmd->add_option("--input", o.input, "single-column CSV path, oldest first")->required();
    add_window_options(predict_cmd, o);
    predict_cmd->add_option("--out", o.out, "write the coefficient matrix here");

    auto* risk = app.add_subcommand("risk", "Monte Carlo pointwise and global risk per N");
    add_experiment_options(risk, o);

    auto* sweep = app.add_subcommand("rate-sweep", "risk over a geometric N grid with a log-log slope fit");
    add_experiment_options(sweep, o);

    auto* conc = app.add_subcommand("concentration", "quantiles of the sup autocovariance deviation per N");
    add_experiment_options(conc, o);
    conc->add_option("--x", o.x_values, "confidence levels x of the deviation bound")->delimiter(',');

    auto* schur = app.add_subcommand("schur-verify", "check the Schur complement identities on random Toeplitz matrices");
    schur->add_option("--sizes", o.sizes, "matrix sizes in [2, 64]")->delimiter(',');
    schur->add_option("--trials", o.trials, "number of random trials");
    schur->add_option("--seed", o.seed, "master seed");
    schur->add_option("--threads", o.threads, "worker threads (0: all cores)");
    schur->add_option("--out", o.out, "output CSV (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*simulate) return cmd_simulate(o, out);
        if (*predict_cmd) return cmd_predict(o, out);
        if (*risk) return cmd_risk(o, out, "risk");
        if (*sweep) return cmd_rate_sweep(o, out);
        if (*conc) return cmd_concentration(o, out);
        if (*schur) return cmd_schur_verify(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace blindpred::cli
