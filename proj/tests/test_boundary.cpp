#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fracsys/boundary.hpp"
#include "fracsys/contraction.hpp"
#include "fracsys/grid.hpp"
#include "fracsys/picard.hpp"
#include "fracsys/summation.hpp"

using namespace fracsys;

TEST_SUITE_BEGIN("boundary");

TEST_CASE("hl spec validation") {
    CHECK_NOTHROW(HLSpec{2.0, 1.0, 0.5, 1.0, 1.0}.validate());
    CHECK_THROWS_AS((HLSpec{2.0, 2.0, 0.5, 1.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((HLSpec{2.0, 0.4, 0.5, 1.0, 1.0}.validate()), std::domain_error);  // <= 1/p
    CHECK_THROWS_AS((HLSpec{1.0, 1.0, 0.5, 1.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((HLSpec{2.0, 1.0, 2.0, 1.0, 1.0}.validate()), std::domain_error);  // t0 > T
}

TEST_CASE("sigma vanishes past t0 and blows up before it") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const auto sigma = hl_sigma(spec);
    CHECK(sigma(0.5) == 0.0);
    CHECK(sigma(0.9) == 0.0);
    CHECK(sigma(0.499999) > sigma(0.4));
    CHECK(sigma(0.0) == doctest::Approx(std::pow(0.5, -0.5) /
                                        (1.0 - std::log(0.5))).epsilon(1e-12));
}

TEST_CASE("closed-form L^p norm matches adaptive refinement of the integral") {
    // || sigma ||_p^p = (c - ln t0)^{1-lambda p} / (lambda p - 1), checked
    // against a graded midpoint quadrature of the integrand.
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const double closed = hl_sigma_lp_norm(spec);
    CHECK(closed == doctest::Approx(0.768515523037525).epsilon(1e-12));

    // Substituting u = c - ln w turns the integral into int_{u0}^inf u^{-2} du;
    // geometric midpoint cells on [u0, U] plus the exact 1/U tail converge
    // to the closed form from below.
    const double u0 = 1.0 - std::log(0.5);
    double prev_err = 1e9;
    for (std::size_t n : {256, 1024, 4096}) {
        const double big = 1e8;
        const double growth = std::pow(big / u0, 1.0 / static_cast<double>(n));
        KahanSum acc;
        double lo = u0;
        for (std::size_t k = 0; k < n; ++k) {
            const double hi = lo * growth;
            const double mid = 0.5 * (lo + hi);
            acc.add((hi - lo) * std::pow(mid, -2.0));
            lo = hi;
        }
        acc.add(1.0 / big);  // analytic tail past U
        const double err = std::abs(std::sqrt(acc.value()) - closed);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 5e-6);
}

TEST_CASE("unboundedness demo: sup grows without bound, norm settles") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const std::vector<std::size_t> levels{256, 1024, 4096};
    const auto rows = unboundedness_demo(spec, levels);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].sup_j > rows[0].sup_j);
    CHECK(rows[2].sup_j > rows[1].sup_j);
    CHECK(std::abs(rows[2].sigma_lp - hl_sigma_lp_norm(spec)) <
          std::abs(rows[0].sigma_lp - hl_sigma_lp_norm(spec)));
}

TEST_CASE("companion run above the boundary order stays bounded") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const std::vector<std::size_t> levels{256, 1024, 4096};
    const auto rows = unboundedness_demo(spec, levels, 0.75);
    CHECK(std::abs(rows[2].sup_j - rows[1].sup_j) < 1e-2);
}

TEST_CASE("the boundary order itself is refused by the gate") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const GateResult gate = validity_gate(OrderVector({1.0 / spec.p}), spec.p);
    CHECK(gate.kind == GateResult::Kind::boundary);
}

TEST_CASE("feeding sigma to the solver at alpha = 1/p is refused") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    CatalogParams params;
    params.sigma = hl_sigma(spec);
    params.exponent = spec.p;
    const ProblemSpec problem{OrderVector({1.0 / spec.p}),
                              {0.0},
                              catalog("hl_forced", params),
                              1.0,
                              128,
                              1.0,
                              1e-8,
                              0};
    CHECK_THROWS_AS(picard_solve(problem), GateRejection);
    try {
        picard_solve(problem);
    } catch (const GateRejection& r) {
        CHECK(r.result().kind == GateResult::Kind::boundary);
    }
}

TEST_CASE("demo rejects non-increasing level lists") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const std::vector<std::size_t> bad{512, 512};
    CHECK_THROWS_AS(unboundedness_demo(spec, bad), std::domain_error);
}

TEST_CASE("nonuniqueness demo separates two near-solutions") {
    const NonuniquenessResult r = nonuniqueness_demo(1024);
    CHECK(r.residual_phi2 == 0.0);
    CHECK(r.residual_phi1 <= 1.5 / 1024.0);  // backward-difference O(h)
    CHECK(r.separation == doctest::Approx(9.0 / 16.0).epsilon(1e-12));

    const NonuniquenessResult finer = nonuniqueness_demo(4096);
    CHECK(finer.residual_phi1 < r.residual_phi1);
}

TEST_CASE("nonuniqueness demo refuses tiny grids") {
    CHECK_THROWS_AS(nonuniqueness_demo(8), std::domain_error);
}

TEST_CASE("demo CSV headers") {
    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const std::vector<std::size_t> levels{256, 1024};
    const auto rows = unboundedness_demo(spec, levels);
    std::ostringstream os;
    write_unboundedness_csv(rows, os);
    CHECK(os.str().rfind("N,sup_J,sigma_lp_norm\n256,", 0) == 0);

    std::vector<NonuniquenessResult> nu{nonuniqueness_demo(64)};
    std::ostringstream os2;
    write_nonuniqueness_csv(nu, os2);
    CHECK(os2.str().rfind("N,res1,res2,separation\n64,", 0) == 0);
}

TEST_SUITE_END();
