#include <doctest.h>

#include <cmath>
#include <random>

#include "blindpred/errors.hpp"
#include "blindpred/model_io.hpp"
#include "blindpred/toeplitz_algebra.hpp"

using namespace blindpred;

namespace {

CovarianceSequence random_symbol(std::mt19937_64& rng, std::size_t degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(degree + 1);
    double l1 = 0.0;
    for (std::size_t k = 1; k <= degree; ++k) {
        a[k] = u(rng);
        l1 += std::abs(a[k]);
    }
    a[0] = 2.0 * l1 + 0.3;
    return CovarianceSequence(a);
}

const CovarianceSequence kWhite({1.0});
const CovarianceSequence kMa({1.25, 0.5});

}  // namespace

TEST_CASE("build_minor") {
    CHECK(build_minor(kWhite, {0, 1}, {0, 1}).isApprox(Matrix::Identity(2, 2)));
    const CovarianceSequence ar({4.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0});
    const Matrix col = build_minor(ar, {-2, -1}, {0});
    CHECK(col(0, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(col(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(build_minor(ar, {0}, {0})(0, 0) == doctest::Approx(4.0 / 3.0));

    const CovarianceSequence tailed({1.0, 0.2}, 1e-4);
    CHECK_THROWS_AS((void)build_minor(tailed, {0, 3}, {0}), Error);
}

TEST_CASE("toeplitz matrix and index blocks") {
    const ToeplitzMatrix t({3.0, 1.0, 0.5});
    CHECK(t(2, 0) == 0.5);
    CHECK(t.dense()(1, 2) == 1.0);
    CHECK(ToeplitzMatrix::from_covariance(kMa, 4).dense()(0, 3) == 0.0);

    const IndexBlocks blocks(3, 10);
    CHECK(blocks.observed() == IndexSet{-3, -2, -1});
    CHECK(blocks.blind() == IndexSet{0, 1, 2});
    CHECK(blocks.missing().size() == 7);
    CHECK(blocks.future().size() == 7);
    CHECK_THROWS_AS(IndexBlocks(5, 4), Error);
    CHECK(default_horizon(4) == 512);
    CHECK(default_horizon(100) == 1600);
}

TEST_CASE("spd_solve") {
    const Matrix rhs = Matrix::Random(3, 2);
    CHECK(spd_solve(ToeplitzMatrix({1.0, 0.0, 0.0}), rhs).isApprox(rhs));

    Matrix b(2, 1);
    b << 1.0, 0.0;
    const Matrix x = spd_solve(ToeplitzMatrix({2.0, 1.0}), b);
    CHECK(x(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(x(1, 0) == doctest::Approx(-1.0 / 3.0));

    std::mt19937_64 rng(17);
    const ToeplitzMatrix t = ToeplitzMatrix::from_covariance(random_symbol(rng, 6), 32);
    const Matrix r = Matrix::Random(32, 4);
    const Matrix sol = spd_solve(t, r);
    CHECK((t.dense() * sol - r).norm() / r.norm() <= 1e-10);

    CHECK_THROWS_AS((void)spd_solve(ToeplitzMatrix({1.0, 2.0}), b), Error);
}

TEST_CASE("schur complement inverse") {
    Matrix g(2, 2);
    g << 2.0, 1.0, 1.0, 2.0;
    CHECK(schur_complement_inverse(g, {0})(0, 0) == doctest::Approx(0.5).epsilon(1e-15));

    const Matrix s = schur_complement_inverse(kWhite, {-3, 0, 4}, 8);
    CHECK(s.isApprox(Matrix::Identity(3, 3)));

    // 4 x 4 Toeplitz (3, 1, 0.5, 0.25), A = {0, 2}; reference from dense inversion.
    const CovarianceSequence c4({3.0, 1.0, 0.5, 0.25});
    const Matrix s4 = schur_complement_inverse(ToeplitzMatrix::from_covariance(c4, 4).dense(), {0, 2});
    CHECK(s4(0, 0) == doctest::Approx(0.3428571428571428).epsilon(1e-13));
    CHECK(s4(0, 1) == doctest::Approx(-0.05714285714285714).epsilon(1e-12));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const CovarianceSequence cov = random_symbol(rng, 5);
        const IndexSet a{-16, -9, -2, 3, 15};
        const Matrix got = schur_complement_inverse(cov, a, 16);
        const Matrix want = spd_inverse(build_minor(cov, a, a));
        CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-8);
    }
    CHECK_THROWS_AS((void)schur_complement_inverse(kMa, {20}, 16), Error);
}

TEST_CASE("oracle predictor") {
    CHECK(oracle_predictor(kWhite, 3).matrix.isZero());

    const CovarianceSequence ar = ar1_covariance(0.6);
    const Matrix c = oracle_predictor(ar, 4).matrix;
    for (long i = 0; i < 3; ++i) CHECK(std::abs(c(i, 0)) < 1e-12);
    CHECK(c(3, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(c(3, 1) == doctest::Approx(0.36).epsilon(1e-12));

    // Hand solve of [[1.25, 0.5], [0.5, 1.25]] c = (0, 0.5).
    const Matrix m = oracle_predictor(kMa, 2).matrix;
    CHECK(m(0, 0) == doctest::Approx(-4.0 / 21.0).epsilon(1e-14));
    CHECK(m(1, 0) == doctest::Approx(10.0 / 21.0).epsilon(1e-14));

    // Normal equations residual.
    std::mt19937_64 rng(8);
    const CovarianceSequence cov = random_symbol(rng, 7);
    const std::size_t k = 6;
    const Matrix p = oracle_predictor(cov, k).matrix;
    const IndexSet o = index_range(-6, 0);
    const IndexSet b = index_range(0, 6);
    const Matrix rhs = build_minor(cov, o, b);
    CHECK((build_minor(cov, o, o) * p - rhs).norm() / rhs.norm() <= 1e-10);

    std::vector<double> window{1.0, 2.0};
    PredictorCoefficients scalar{Matrix::Constant(1, 1, 0.6)};
    CHECK(scalar.apply(std::span<const double>(window).subspan(1))(0) == doctest::Approx(1.2));
}

TEST_CASE("finite past predictor matches the window predictor at equal length") {
    const CovarianceSequence cov({2.0, 0.7, -0.3});
    CHECK(finite_past_predictor(cov, 5, 5).matrix.isApprox(oracle_predictor(cov, 5).matrix));
    const Matrix longer = finite_past_predictor(cov, 9, 2).matrix;
    CHECK(longer.rows() == 9);
    CHECK(longer.cols() == 2);
}

TEST_CASE("prediction error operator") {
    CHECK(prediction_error_operator(kWhite, {-1}, {0})(0, 0) == doctest::Approx(1.0));
    CHECK(prediction_error_operator(ar1_covariance(0.6), {-1}, {0})(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)prediction_error_operator(kMa, {-1, 0}, {0}), Error);

    // Q(B|A) equals the inverse of the precision block on the complement of A.
    const CovarianceSequence cov({2.0, 0.7, -0.3, 0.1});
    const IndexSet a{-4, -3, -2, -1};
    const IndexSet b{0, 1};
    const Matrix q = prediction_error_operator(cov, a, b);
    const IndexSet all = index_range(-4, 2);
    const Matrix lambda = spd_inverse(build_minor(cov, all, all));
    const Matrix dual = spd_inverse(lambda.bottomRightCorner(2, 2));
    CHECK((q - dual).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("projector onto the infinite past") {
    const InfinitePastProjector w = projector_infinite_past(kWhite, {0}, 64);
    CHECK(w.coefficients.cwiseAbs().maxCoeff() < 1e-12);

    const InfinitePastProjector ar = projector_infinite_past(ar1_covariance(0.6), {0}, 64);
    CHECK(ar.coefficients(63, 0) == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(ar.coefficients.topRows(63).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(ar.lambda_form(63, 0) == doctest::Approx(0.6).epsilon(1e-8));

    // MA(1): both routes and a long dense solve agree.
    const InfinitePastProjector ma = projector_infinite_past(kMa, {0}, 64);
    const Matrix ref = finite_past_predictor(kMa, 512, 1).matrix;
    CHECK((ma.coefficients.bottomRows(10) - ref.bottomRows(10)).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(ma.discrepancy <= 1e-6);

    // Doubling the horizon shrinks the truncation gap for a slowly decaying past.
    const CovarianceSequence slow({1.0, 0.45});
    const Matrix t16 = finite_past_predictor(slow, 16, 1).matrix;
    const Matrix t32 = finite_past_predictor(slow, 32, 1).matrix;
    const Matrix t64 = finite_past_predictor(slow, 64, 1).matrix;
    const double gap1 = (t32.bottomRows(16) - t16).norm();
    const double gap2 = (t64.bottomRows(32) - t32).norm();
    CHECK(gap2 < gap1);

    CHECK_THROWS_AS((void)projector_infinite_past(slow, {0}, 4, 1e-12), Error);
}

TEST_CASE("warped operator norm") {
    CHECK(warped_operator_norm(Matrix::Zero(3, 3), kMa) == 0.0);

    Matrix d(2, 2);
    d << 1.0, -0.5, 0.25, 2.0;
    CHECK(warped_operator_norm(d, kWhite) == doctest::Approx(spectral_norm(d)).epsilon(1e-12));
    // Generalized eigenvalue reference (numpy) for the MA(1) geometry.
    CHECK(warped_operator_norm(d, kMa) == doctest::Approx(1.9139227243433776).epsilon(1e-12));

    std::mt19937_64 rng(23);
    std::normal_distribution<double> n01;
    const CovarianceSequence cov = random_symbol(rng, 4);
    const SpectralDensity f = covariance_to_spectrum(cov);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix r(5, 5);
        for (long i = 0; i < 25; ++i) r.data()[i] = n01(rng);
        const double plain = spectral_norm(r);
        const double warped = warped_operator_norm(r, cov);
        CHECK(warped >= f.lower_bound() / f.upper_bound() * plain);
        CHECK(warped <= f.upper_bound() / f.lower_bound() * plain);
    }
}

TEST_CASE("toeplitz spectrum lies within the symbol bounds") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const CovarianceSequence cov = random_symbol(rng, 6);
        const SpectralDensity f = covariance_to_spectrum(cov);
        Eigen::SelfAdjointEigenSolver<Matrix> es(ToeplitzMatrix::from_covariance(cov, 40).dense());
        CHECK(es.eigenvalues().minCoeff() >= f.lower_bound() - 1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= f.upper_bound() + 1e-9);
    }
}
