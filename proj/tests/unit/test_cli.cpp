#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "blindpred/gaussian_simulator.hpp"
#include "blindpred/model_io.hpp"
#include "cli.hpp"

using namespace blindpred;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"bogus"}).code == 1);
    CHECK(run_cli({"simulate"}).code == 1);
    CHECK(run_cli({"risk", "--n", "100", "--k", "2", "--k-rule", "s=1"}).code == 1);
    CHECK(run_cli({"risk", "--k", "2"}).code == 1);
    CHECK(run_cli({"risk", "--n", "100", "--k-rule", "t=1"}).code == 1);
    CHECK(run_cli({"risk", "--n", "100", "--k", "2", "--model", "model=nope"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("simulate writes a single column with metadata") {
    const Result r = run_cli({"simulate", "--model", "ma1,theta=0.5", "--n", "20", "--seed", "4"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::size_t values = 0;
    std::size_t meta = 0;
    while (std::getline(in, line)) {
        if (line.front() == '#') ++meta;
        else ++values;
    }
    CHECK(values == 20);
    CHECK(meta >= 2);
    CHECK(r.out.find("version=1.0.0") != std::string::npos);
    CHECK(run_cli({"simulate", "--model", "ma1,theta=0.5", "--n", "20", "--seed", "4"}).out == r.out);
}

TEST_CASE("predict round trip") {
    const std::string path = "cli_test_path.csv";
    const std::string coeffs = "cli_test_coeffs.csv";
    {
        std::ofstream out(path);
        REQUIRE(run_cli({"simulate", "--model", "ar1,phi=0.6", "--n", "3000", "--seed", "1", "--out", path}).code == 0);
    }
    const Result r = run_cli({"predict", "--input", path, "--k", "3", "--m", "0.39", "--out", coeffs});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("target,prediction") != std::string::npos);

    std::ifstream in(coeffs);
    const Matrix m = cli::read_predictor_csv(in);
    CHECK(m.rows() == 3);
    CHECK(m(2, 0) == doctest::Approx(0.6).epsilon(0.1));

    const Result rule = run_cli({"predict", "--input", path, "--k-rule", "s=1"});
    CHECK(rule.code == 0);
    CHECK(rule.out.find("K=1") != std::string::npos);
    std::remove(path.c_str());
    std::remove(coeffs.c_str());
    CHECK(run_cli({"predict", "--input", "/nonexistent.csv", "--k", "2"}).code == 1);
}

TEST_CASE("predictor csv format") {
    std::stringstream io;
    Matrix m(2, 2);
    m << 0.1, 0.2, 0.3, 0.4;
    cli::write_predictor_csv(io, m);
    CHECK(io.str() == "2\n0.10000000000000001,0.20000000000000001\n0.29999999999999999,0.40000000000000002\n");
    CHECK(cli::read_predictor_csv(io).isApprox(m));
    std::stringstream bad("3\n1,2\n3,4\n");
    CHECK_THROWS((void)cli::read_predictor_csv(bad));
}

TEST_CASE("experiment subcommands") {
    const Result risk = run_cli({"risk", "--model", "white", "--grid", "300,600", "--k", "2", "--reps", "5"});
    REQUIRE(risk.code == 0);
    CHECK(risk.out.find("\n600,2,512,5,") != std::string::npos);

    const Result sweep = run_cli({"rate-sweep", "--model", "white", "--grid", "300,600,1200,2400", "--k", "2", "--reps", "5"});
    REQUIRE(sweep.code == 0);
    CHECK(sweep.out.find("# slope=") != std::string::npos);
    CHECK(run_cli({"rate-sweep", "--model", "white", "--grid", "300,600", "--k", "2"}).code == 1);

    const Result conc = run_cli({"concentration", "--model", "white", "--grid", "500,2000", "--k", "3", "--reps", "20", "--x", "1,2"});
    REQUIRE(conc.code == 0);
    CHECK(conc.out.find("bound_x=1,exceedance_x=1,bound_x=2") != std::string::npos);

    const Result schur = run_cli({"schur-verify", "--trials", "10", "--sizes", "3,7"});
    CHECK(schur.code == 0);
    CHECK(schur.out.find("sizes=3;7") != std::string::npos);
    CHECK(run_cli({"schur-verify", "--sizes", "100"}).code == 1);
}
