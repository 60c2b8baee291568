#include <doctest.h>

#include <cmath>

#include "fracsys/config.hpp"
#include "fracsys/errors.hpp"

using namespace fracsys;

TEST_SUITE_BEGIN("config");

namespace {

const char* kFullConfig = R"(# example run
[problem]
orders = 0.5, 1
initial = 1, 0
rhs = linear_system
matrix = 0, 1, -1, 0
forcing = 0, 0
p = 4
T = 1
N = 512
r = 1
tol = 1e-10
max_iter = 0
threads = 2
rule = trapezoid

[contraction]
rho = 1
q = inf
g_norm = 2
T = 1
n_max = 100000

[boundary]
mode = hl
p = 2
lambda = 1
t0 = 0.5
c = 1
T = 1
levels = 256, 512, 1024
)";

}  // namespace

TEST_CASE("parses a full configuration") {
    const Config cfg = Config::parse_string(kFullConfig);
    REQUIRE(cfg.problem.has_value());
    CHECK(cfg.problem->orders == std::vector<double>{0.5, 1.0});
    CHECK(cfg.problem->intervals == 512);
    CHECK(cfg.problem->threads == 2);
    REQUIRE(cfg.contraction.has_value());
    CHECK(std::isinf(cfg.contraction->q));
    REQUIRE(cfg.boundary.has_value());
    CHECK(cfg.boundary->levels == std::vector<std::size_t>{256, 512, 1024});

    const ProblemSpec problem = cfg.to_problem();
    CHECK(problem.rhs.dim == 2);
    CHECK(problem.rhs.exponent == 4.0);
    CHECK(problem.orders[1] == 1.0);

    const ContractionParams params = cfg.to_contraction_params();
    CHECK(params.g_norm == 2.0);

    const HLSpec hl = cfg.to_hl_spec();
    CHECK(hl.t0 == 0.5);
}

TEST_CASE("serialize / parse round-trip is the identity") {
    const Config cfg = Config::parse_string(kFullConfig);
    const Config again = Config::parse_string(cfg.serialize());
    CHECK(cfg == again);
    CHECK(again.serialize() == cfg.serialize());

    // and the derived problem is unchanged
    const ProblemSpec a = cfg.to_problem();
    const ProblemSpec b = again.to_problem();
    CHECK(a.orders.values() == b.orders.values());
    CHECK(a.initial == b.initial);
    CHECK(a.horizon == b.horizon);
    CHECK(a.intervals == b.intervals);
    CHECK(a.grading == b.grading);
    CHECK(a.tol == b.tol);
    CHECK(a.max_iter == b.max_iter);
    CHECK(a.rhs.name == b.rhs.name);
}

TEST_CASE("unknown keys and sections are rejected with line numbers") {
    try {
        Config::parse_string("[problem]\nwhatever = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "whatever");
    }
    CHECK_THROWS_AS(Config::parse_string("[nope]\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("key = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[problem]\nN = abc\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[problem]\nrule = simpson\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[boundary]\nmode = wat\n"), ConfigError);
}

TEST_CASE("hl_forced problems wire sigma from the boundary parameters") {
    const char* text = R"(
[problem]
orders = 0.75
initial = 0
rhs = hl_forced
sigma_p = 2
sigma_lambda = 1
sigma_t0 = 0.5
sigma_c = 1
p = 2
T = 1
N = 128
)";
    const Config cfg = Config::parse_string(text);
    const ProblemSpec problem = cfg.to_problem();
    CHECK(problem.rhs.name == "hl_forced");
    double out[1];
    double x[1] = {0.0};
    problem.rhs.eval(std::span<const double>(x, 1), 0.25, std::span<double>(out, 1));
    CHECK(out[0] > 0.0);  // sigma(0.25) > 0
    problem.rhs.eval(std::span<const double>(x, 1), 0.75, std::span<double>(out, 1));
    CHECK(out[0] == 0.0);  // sigma vanishes past t0
}

TEST_CASE("auto grading resolves to 1/min(alpha) capped at 4") {
    const char* text = "[problem]\norders = 0.4\ninitial = 1\nrhs = zero\np = 4\nr = auto\n";
    const Config cfg = Config::parse_string(text);
    CHECK(cfg.problem->grading == 0.0);
    CHECK(cfg.to_problem().grading == doctest::Approx(2.5));
    CHECK(Config::parse_string(cfg.serialize()) == cfg);

    const char* capped = "[problem]\norders = 0.1\ninitial = 1\nrhs = zero\np = 11\nr = auto\n";
    CHECK(Config::parse_string(capped).to_problem().grading == 4.0);
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
    const char* text = "\n; semicolon comment\n[problem]\n  orders =  1 \n"
                       "# hash comment\ninitial = 3\n";
    const Config cfg = Config::parse_string(text);
    CHECK(cfg.problem->orders == std::vector<double>{1.0});
    CHECK(cfg.problem->initial == std::vector<double>{3.0});
}

TEST_SUITE_END();
