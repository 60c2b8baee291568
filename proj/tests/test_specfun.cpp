#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracsys/random.hpp"
#include "fracsys/specfun.hpp"

using namespace fracsys;

TEST_SUITE_BEGIN("specfun");

TEST_CASE("log_gamma pins classical values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    // Gamma(1/2) = sqrt(pi)
    CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470008707).epsilon(1e-14));
}

TEST_CASE("log_gamma matches the libm reference across [1e-3, 1e4]") {
    // std::lgamma is the independent oracle for the Lanczos fit.
    Rng rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double x = std::exp(rng.uniform(std::log(1e-3), std::log(1e4)));
        const double ref = std::lgamma(x);
        CHECK(std::abs(log_gamma(x) - ref) <= 1e-12 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("log_gamma recurrence log G(x+1) - log G(x) = log x") {
    for (int k = 0; k < 1000; ++k) {
        const double x = 0.5 + 49.5 * k / 999.0;
        CHECK(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) <= 1e-12);
    }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
    CHECK_THROWS_AS(fracsys::gamma(-1.0), std::domain_error);
}

TEST_CASE("gamma overflows to +inf instead of garbage") {
    CHECK(std::isinf(fracsys::gamma(180.0)));
    CHECK(fracsys::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("beta from log-gamma: B(2,3) = 1/12") {
    CHECK(fracsys::beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-13));
}

TEST_CASE("mittag_leffler reduces to exp at alpha = beta = 1") {
    for (double z : {-10.0, -5.5, -1.0, 0.0, 0.3, 4.0, 10.0}) {
        const double e = mittag_leffler({1.0, 1.0, z});
        CHECK(e == doctest::Approx(std::exp(z)).epsilon(1e-10));
    }
}

TEST_CASE("mittag_leffler reduces to cosh(sqrt(z)) at alpha = 2") {
    for (double z : {0.0, 1.0, 4.0, 9.0, 16.0, 25.0}) {
        const double e = mittag_leffler({2.0, 1.0, z});
        CHECK(e == doctest::Approx(std::cosh(std::sqrt(z))).epsilon(1e-12));
    }
}

TEST_CASE("mittag_leffler constant term: E_{1,2}(0) = 1/Gamma(2) = 1") {
    CHECK(mittag_leffler({1.0, 2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mittag_leffler at alpha 1/2 against the erfc identity") {
    // E_{1/2}(z) = exp(z^2) erfc(-z); at z = -1 this is e * erfc(1).
    const double oracle = std::exp(1.0) * std::erfc(1.0);
    CHECK(mittag_leffler({0.5, 1.0, -1.0}) == doctest::Approx(oracle).epsilon(1e-12));
    for (double z : {-3.0, -2.0, -0.25, 0.5, 2.0}) {
        const double ref = std::exp(z * z) * std::erfc(-z);
        CHECK(mittag_leffler({0.5, 1.0, z}) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("mittag_leffler domain and range errors") {
    CHECK_THROWS_AS(mittag_leffler({0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({1.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({1.0, 1.0, 51.0}), std::range_error);
    CHECK_THROWS_AS(mittag_leffler({1.0, 1.0, -50.5}), std::range_error);
    // the Gamma factor cannot tame z^k within the term budget at tiny alpha
    CHECK_THROWS_AS(mittag_leffler({0.01, 1.0, 50.0}), std::range_error);
}

TEST_CASE("wendel ratio is exactly 1 at a = 1") {
    const WendelCheck w = wendel_check(3.0, 1.0);
    CHECK(w.ratio == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("wendel at (1, 1/2): ratio is Gamma(3/2) = sqrt(pi)/2") {
    const WendelCheck w = wendel_check(1.0, 0.5);
    CHECK(w.lower == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-13));
    CHECK(w.ratio == doctest::Approx(0.88622692545275801365).epsilon(1e-13));
    CHECK(w.upper == 1.0);
    CHECK(w.holds());
}

TEST_CASE("wendel bounds tighten for large x") {
    // Measured gap at (100, 0.3) is 1.047e-3 and shrinks like 1/x.
    const WendelCheck w = wendel_check(100.0, 0.3);
    CHECK(w.ratio - w.lower <= 2e-3);
    CHECK(w.holds());
    const WendelCheck far = wendel_check(1000.0, 0.3);
    CHECK(far.ratio - far.lower < w.ratio - w.lower);
}

TEST_CASE("wendel sandwich holds across (0, 1e3] x (0, 1]") {
    Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        const double x = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
        const double a = rng.uniform(1e-6, 1.0);
        CHECK(wendel_check(x, a).holds());
    }
}

TEST_CASE("wendel rejects out-of-domain a") {
    CHECK_THROWS_AS(wendel_check(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(wendel_check(1.0, 1.5), std::domain_error);
}

TEST_SUITE_END();
