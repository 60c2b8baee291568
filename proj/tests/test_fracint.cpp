#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracsys/errors.hpp"
#include "fracsys/fracint.hpp"
#include "fracsys/random.hpp"
#include "fracsys/specfun.hpp"

using namespace fracsys;

TEST_SUITE_BEGIN("fracint");

namespace {

// Independent power-rule oracle J^a t^b = Gamma(b+1)/Gamma(a+b+1) t^{a+b},
// evaluated with libm's lgamma rather than the library's log_gamma.
double power_rule(double alpha, double beta_exp, double t) {
    if (t == 0.0) return 0.0;
    return std::exp(std::lgamma(beta_exp + 1.0) - std::lgamma(alpha + beta_exp + 1.0) +
                    (alpha + beta_exp) * std::log(t));
}

}  // namespace

TEST_CASE("build_weights rejects bad orders") {
    const auto g = make_grid(1.0, 8);
    CHECK_THROWS_AS(WeightTable(0.0, g, QuadratureRule::trapezoid), std::domain_error);
    CHECK_THROWS_AS(WeightTable(1.5, g, QuadratureRule::rectangle), std::domain_error);
}

TEST_CASE("alpha = 1 rectangle weights are the left Riemann sum") {
    const auto g = make_grid(1.0, 4);
    const WeightTable table(1.0, g, QuadratureRule::rectangle);
    std::vector<double> w(5);
    table.row(3, w);
    for (std::size_t k = 0; k < 3; ++k) CHECK(w[k] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(w[3] == 0.0);
}

TEST_CASE("row 0 is empty and causality holds") {
    const auto g = make_grid(1.0, 16, 2.0);
    const WeightTable table(0.5, g, QuadratureRule::trapezoid);
    std::vector<double> w(17);
    table.row(0, w);
    CHECK(w[0] == 0.0);
    CHECK(table.weight(5, 9) == 0.0);
    CHECK(table.weight(5, 6) == 0.0);
}

TEST_CASE("weights integrate constants exactly") {
    // Sum of row i must be t_i^alpha / Gamma(alpha+1): the algebraic identity
    // behind the whole product-integration scheme.
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = rng.uniform(0.1, 1.0);
        const double horizon = rng.uniform(0.5, 2.5);
        const std::size_t n = 16 + static_cast<std::size_t>(rng.uniform(0, 200));
        const double grading = trial % 2 ? 1.0 : rng.uniform(1.0, 3.0);
        const auto rule = trial % 3 ? QuadratureRule::trapezoid : QuadratureRule::rectangle;
        const auto g = make_grid(horizon, n, grading);
        const WeightTable table(alpha, g, rule);
        const GridFunction ones = GridFunction::constant(g, 1.0);
        const GridFunction out = rl_integral(table, ones);
        for (std::size_t i = 0; i < g->size(); ++i) {
            const double exact =
                std::pow(g->node(i), alpha) * std::exp(-std::lgamma(alpha + 1.0));
            CHECK(std::abs(out.at(i, 0) - exact) <= 1e-12);
        }
    }
}

TEST_CASE("half integral of 1 at t = 1 is 1/Gamma(3/2)") {
    const auto g = make_grid(1.0, 256);
    const WeightTable table(0.5, g, QuadratureRule::trapezoid);
    const GridFunction out = rl_integral(table, GridFunction::constant(g, 1.0));
    CHECK(out.at(256, 0) == doctest::Approx(1.1283791670955126).epsilon(1e-12));
}

TEST_CASE("alpha = 1 trapezoid integrates linear functions exactly") {
    const auto g = make_grid(1.0, 32);
    const WeightTable table(1.0, g, QuadratureRule::trapezoid);
    const GridFunction f = GridFunction::sample_scalar(g, [](double t) { return t; });
    const GridFunction out = rl_integral(table, f);
    for (std::size_t i = 0; i <= 32; ++i) {
        const double t = g->node(i);
        CHECK(out.at(i, 0) == doctest::Approx(0.5 * t * t).epsilon(1e-14));
    }
}

TEST_CASE("power rule J^{0.3} t at t = 1") {
    // Gamma(2)/Gamma(2.3), computed with lgamma and frozen here
    const double expected = power_rule(0.3, 1.0, 1.0);
    CHECK(expected == doctest::Approx(0.857109621959463).epsilon(1e-12));
    double err_prev = 1.0;
    for (std::size_t n : {64, 256, 1024}) {
        const auto g = make_grid(1.0, n);
        const WeightTable table(0.3, g, QuadratureRule::trapezoid);
        const GridFunction f = GridFunction::sample_scalar(g, [](double t) { return t; });
        const GridFunction out = rl_integral(table, f);
        const double err = std::abs(out.at(n, 0) - expected);
        CHECK(err < err_prev);
        err_prev = err;
    }
    CHECK(err_prev <= 2e-4);  // h^{1+alpha} truncation at N = 1024
}

TEST_CASE("semigroup J^a J^b approaches J^{a+b} under refinement") {
    // On uniform grids the sup error decays like h^{a+b} (driven by the
    // t^{a+b} behavior at 0); the r = 2 graded mesh restores order > 1.
    for (auto [a, b] : {std::pair{0.3, 0.3}, std::pair{0.3, 0.4}, std::pair{0.3, 0.5},
                        std::pair{0.3, 0.7}, std::pair{0.4, 0.4}, std::pair{0.4, 0.5},
                        std::pair{0.5, 0.5}}) {
        double prev = 1.0;
        bool decreasing = true;
        std::vector<double> errs;
        for (std::size_t n : {128, 256, 512}) {
            const auto g = make_grid(1.0, n, 2.0);
            const GridFunction f =
                GridFunction::sample_scalar(g, [](double t) { return std::cos(3.0 * t); });
            const WeightTable ta(a, g, QuadratureRule::trapezoid);
            const WeightTable tb(b, g, QuadratureRule::trapezoid);
            const WeightTable tab(a + b, g, QuadratureRule::trapezoid);
            const double err =
                sup_norm_diff(rl_integral(ta, rl_integral(tb, f)), rl_integral(tab, f));
            errs.push_back(err);
            decreasing = decreasing && err < prev;
            prev = err;
        }
        CHECK(decreasing);
        // empirical order >= 0.8 between the last two levels
        CHECK(std::log2(errs[errs.size() - 2] / errs.back()) >= 0.8);
    }
}

TEST_CASE("caputo of a constant vanishes") {
    const auto g = make_grid(1.0, 32);
    const GridFunction c = GridFunction::constant(g, 3.25);
    for (double alpha : {0.25, 0.5, 1.0}) {
        const CaputoResult d = caputo_l1(alpha, c);
        for (std::size_t i = 0; i <= 32; ++i) CHECK(d.values.at(i, 0) == 0.0);
    }
}

TEST_CASE("caputo at alpha = 1 is the difference quotient") {
    const auto g = make_grid(1.0, 16);
    const GridFunction f = GridFunction::sample_scalar(g, [](double t) { return t; });
    const CaputoResult d = caputo_l1(1.0, f);
    CHECK_FALSE(d.node0_extrapolated);
    for (std::size_t i = 0; i <= 16; ++i)
        CHECK(d.values.at(i, 0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("caputo power rule: D^{1/2} t at t = 1 is 2/sqrt(pi)") {
    const auto g = make_grid(1.0, 512);
    const GridFunction f = GridFunction::sample_scalar(g, [](double t) { return t; });
    const CaputoResult d = caputo_l1(0.5, f);
    CHECK(d.node0_extrapolated);
    CHECK(d.values.at(512, 0) == doctest::Approx(1.1283791670955126).epsilon(1e-4));
}

TEST_CASE("inversion: J^a cD^a h returns h - h(0) under refinement") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        double prev = 1.0;
        for (std::size_t n : {64, 128, 256, 512}) {
            const auto g = make_grid(1.0, n);
            const GridFunction h =
                GridFunction::sample_scalar(g, [](double t) { return t * t + 2.0; });
            const WeightTable table(alpha, g, QuadratureRule::trapezoid);
            const GridFunction back = rl_integral(table, caputo_l1(alpha, h).values);
            double err = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                const double t = g->node(i);
                err = std::max(err, std::abs(back.at(i, 0) - t * t));
            }
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 2e-3);
    }
}

TEST_CASE("causality: output never depends on later samples") {
    const auto g = make_grid(1.0, 32);
    GridFunction f = GridFunction::sample_scalar(g, [](double t) { return std::sin(t); });
    const WeightTable table(0.6, g, QuadratureRule::trapezoid);
    const GridFunction base = rl_integral(table, f);
    f.at(20, 0) += 100.0;  // perturb a late node
    const GridFunction bumped = rl_integral(table, f);
    for (std::size_t i = 0; i < 20; ++i)
        CHECK(bumped.at(i, 0) == base.at(i, 0));
    CHECK(bumped.at(20, 0) != base.at(20, 0));
}

TEST_CASE("threaded apply is bit-identical to serial") {
    const auto g = make_grid(1.0, 200, 2.0);
    const GridFunction f =
        GridFunction::sample_scalar(g, [](double t) { return std::cos(5.0 * t); });
    const WeightTable table(0.4, g, QuadratureRule::trapezoid);
    const GridFunction serial = table.apply(f, 1);
    const GridFunction threaded = table.apply(f, 4);
    for (std::size_t i = 0; i <= 200; ++i)
        CHECK(serial.at(i, 0) == threaded.at(i, 0));
}

TEST_CASE("holder envelope values and domain") {
    CHECK(holder_envelope(1.0, 2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // alpha=0.5, p=4, ||g||=2: envelope = 2 * 3^{3/4} at t = 1
    CHECK(holder_envelope(0.5, 4.0, 2.0, 1.0) ==
          doctest::Approx(2.0 * std::pow(3.0, 0.75)).epsilon(1e-13));
    CHECK(holder_envelope(0.5, 4.0, 2.0, 0.0) == 0.0);
    CHECK_THROWS_AS(holder_envelope(0.5, 2.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(holder_envelope(0.4, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("holder envelope dominates the transform") {
    const auto g = make_grid(1.0, 256);
    const GridFunction f =
        GridFunction::sample_scalar(g, [](double t) { return 2.0 + std::cos(4.0 * t); });
    const double alpha = 0.6;
    const double p = 3.0;
    const WeightTable table(alpha, g, QuadratureRule::trapezoid);
    const GridFunction out = rl_integral(table, f);
    const double norm = lp_norm(f, p);
    for (std::size_t i = 0; i <= 256; ++i) {
        const double env = holder_envelope(alpha, p, norm, g->node(i));
        CHECK(std::abs(out.at(i, 0)) <= env * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("continuity surrogate: modulus of the transform shrinks") {
    double prev = 1.0;
    for (std::size_t n : {64, 128, 256, 512}) {
        const auto g = make_grid(1.0, n);
        const GridFunction f =
            GridFunction::sample_scalar(g, [](double t) { return std::cos(10.0 * t); });
        const WeightTable table(0.3, g, QuadratureRule::trapezoid);
        const GridFunction out = rl_integral(table, f);
        double modulus = 0.0;
        for (std::size_t i = 0; i + 1 <= n; ++i)
            modulus = std::max(modulus, std::abs(out.at(i + 1, 0) - out.at(i, 0)));
        CHECK(modulus < prev);
        prev = modulus;
    }
}

TEST_CASE("grid mismatch raises a shape error") {
    const auto g1 = make_grid(1.0, 16);
    const auto g2 = make_grid(1.0, 17);
    const WeightTable table(0.5, g1, QuadratureRule::trapezoid);
    CHECK_THROWS_AS(rl_integral(table, GridFunction::constant(g2, 1.0)), ShapeError);
}

TEST_SUITE_END();
