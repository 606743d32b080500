#include <doctest.h>

#include <cmath>
#include <set>

#include "blindpred/errors.hpp"
#include "blindpred/gaussian_simulator.hpp"
#include "blindpred/model_io.hpp"

using namespace blindpred;

TEST_CASE("seed mixing") {
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t i = 0; i < 256; ++i) seen.insert(replication_seed(7, s, i));
    CHECK(seen.size() == 1024);
    CHECK(replication_seed(1, 2, 3) == replication_seed(1, 2, 3));
}

TEST_CASE("embedding size and method") {
    const GaussianSampler ma(CovarianceSequence({1.25, 0.5}), 100);
    CHECK(ma.method() == SimulationMethod::CirculantEmbedding);
    CHECK(ma.embedding_size() == 256);  // smallest power of two >= 2 (100 + 1)
    CHECK(ma.clipped_fraction() == 0.0);

    const GaussianSampler dense(CovarianceSequence({1.25, 0.5}), 10, SimulationMethod::DenseCholesky);
    CHECK(dense.method() == SimulationMethod::DenseCholesky);
    CHECK(dense.sample(1).size() == 10);

    // Not positive definite: circulant refuses, dense fails too.
    const CovarianceSequence bad({1.0, 0.9, 0.9});
    CHECK_THROWS_AS(GaussianSampler(bad, 8, SimulationMethod::CirculantEmbedding), Error);
    CHECK_THROWS_AS(GaussianSampler(bad, 8), Error);
    CHECK_THROWS_AS(GaussianSampler(CovarianceSequence({1.0}), 0), Error);
}

TEST_CASE("determinism") {
    const SimulationSpec spec{CovarianceSequence({1.0, 0.3}), 64, 99, SimulationMethod::Auto};
    const auto a = simulate_samples(spec);
    const auto b = simulate_samples(spec);
    CHECK(a == b);
    SimulationSpec other = spec;
    other.seed = 100;
    CHECK(simulate_samples(other) != a);
    CHECK(simulate_samples({CovarianceSequence({1.0}), 1, 5, SimulationMethod::Auto}).size() == 1);
    CHECK_THROWS_AS((void)simulate_path({CovarianceSequence({1.0}), 1, 5, SimulationMethod::Auto}), Error);
}

TEST_CASE("white noise variance") {
    const auto x = simulate_samples({CovarianceSequence({1.0}), 1000000, 1, SimulationMethod::Auto});
    double s2 = 0.0;
    for (double v : x) s2 += v * v;
    CHECK(std::abs(s2 / 1e6 - 1.0) <= 0.01);
}

TEST_CASE("AR(1) lag-one autocorrelation") {
    const auto x = simulate_samples({ar1_covariance(0.5), 1000000, 2, SimulationMethod::Auto});
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += x[i] * x[i];
        if (i + 1 < x.size()) s1 += x[i] * x[i + 1];
    }
    CHECK(std::abs(s1 / s0 - 0.5) <= 0.01);
}

TEST_CASE("ensemble covariance matches every lag up to 8") {
    const CovarianceSequence cov({2.0, 0.5, -0.2, 0.1, 0.05});
    for (auto method : {SimulationMethod::CirculantEmbedding, SimulationMethod::DenseCholesky}) {
        const GaussianSampler sampler(cov, 12, method);
        constexpr int kReps = 2000;
        std::vector<double> sum(9, 0.0);
        std::vector<double> sum2(9, 0.0);
        for (int i = 0; i < kReps; ++i) {
            const auto x = sampler.sample(replication_seed(4, 0, i));
            for (std::size_t k = 0; k <= 8; ++k) {
                const double v = x[0] * x[k];
                sum[k] += v;
                sum2[k] += v * v;
            }
        }
        for (std::size_t k = 0; k <= 8; ++k) {
            const double mean = sum[k] / kReps;
            const double se = std::sqrt((sum2[k] / kReps - mean * mean) / kReps);
            CAPTURE(k);
            CHECK(std::abs(mean - cov.at(static_cast<long>(k))) <= 3.0 * se + 1e-12);
        }
    }
}

TEST_CASE("gaussianity check") {
    std::vector<std::vector<double>> paths;
    const GaussianSampler white(CovarianceSequence({1.0}), 1);
    for (int i = 0; i < 10000; ++i) paths.push_back(white.sample(replication_seed(0, 0, i)));
    const GaussianityReport r = gaussianity_check(paths, CovarianceSequence({1.0}));
    CHECK(r.passed);
    CHECK(r.expected_fourth_moment == 3.0);
    CHECK(std::abs(r.skewness) <= 0.1);

    const CovarianceSequence ar = ar1_covariance(0.6);
    const GaussianSampler sampler(ar, 16);
    std::vector<std::vector<double>> arp;
    for (int i = 0; i < 10000; ++i) arp.push_back(sampler.sample(replication_seed(1, 0, i)));
    const GaussianityReport ra = gaussianity_check(arp, ar);
    CHECK(ra.expected_fourth_moment == doctest::Approx(3.0 / (0.64 * 0.64)));
    CHECK(ra.passed);

    paths.resize(99);
    CHECK_THROWS_AS((void)gaussianity_check(paths, CovarianceSequence({1.0})), Error);
}
