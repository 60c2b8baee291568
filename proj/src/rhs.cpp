#include "fracsys/rhs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracsys/errors.hpp"
#include "fracsys/random.hpp"

namespace fracsys {
namespace {

double euclidean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double euclidean_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

// Point with ||x|| <= radius. Even draws are uniform in the ball; odd draws
// shrink the radius log-uniformly toward 0, where kinks of square-root type
// right-hand sides hide from uniform sampling.
void draw_ball_point(Rng& rng, double radius, bool near_origin, std::span<double> out) {
    const std::size_t n = out.size();
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = rng.normal();
        norm += out[j] * out[j];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        out[0] = 1.0;
        norm = 1.0;
    }
    const double r = near_origin
                         ? radius * std::pow(10.0, -12.0 * rng.uniform())
                         : radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) out[j] *= r / norm;
}

}  // namespace

void ProblemSpec::validate() const {
    if (!rhs.eval) throw std::domain_error("ProblemSpec: right-hand side has no evaluator");
    if (rhs.dim != orders.size() || rhs.dim != initial.size())
        throw ShapeError("ProblemSpec: orders, initial state and RHS dimension disagree");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("ProblemSpec: horizon must be positive");
    if (!(tol > 0.0)) throw std::domain_error("ProblemSpec: tolerance must be positive");
    if (intervals < 1) throw std::domain_error("ProblemSpec: need at least one interval");
    if (!(grading >= 1.0)) throw std::domain_error("ProblemSpec: grading must be >= 1");
    if (!(rhs.exponent >= 1.0))
        throw std::domain_error("ProblemSpec: integrability exponent must be >= 1");
}

GridPtr ProblemSpec::make_solution_grid() const {
    return make_grid(horizon, intervals, grading);
}

GridFunction nemytskii_eval(const CaratheodoryRHS& rhs, const GridFunction& phi) {
    if (phi.dim() != rhs.dim)
        throw ShapeError("nemytskii_eval: path dimension differs from RHS dimension");
    GridFunction out(phi.grid(), rhs.dim);
    for (std::size_t i = 0; i < phi.nodes(); ++i) {
        rhs.eval(phi.value(i), phi.grid()->node(i), out.value(i));
        for (double v : out.value(i))
            if (!std::isfinite(v)) throw EvalError("non-finite RHS value", i);
    }
    return out;
}

CheckReport check_growth(const CaratheodoryRHS& rhs, double horizon, double ball_radius,
                         std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::domain_error("check_growth: need at least one sample");
    if (!rhs.eval) throw std::domain_error("check_growth: RHS has no evaluator");

    Rng rng(seed);
    CheckReport report;
    report.samples = samples;
    report.slack = 1e-12 * (1.0 + rhs.growth_constant * ball_radius);
    report.max_violation = -std::numeric_limits<double>::infinity();

    std::vector<double> x(rhs.dim), fx(rhs.dim);
    for (std::size_t k = 0; k < samples; ++k) {
        draw_ball_point(rng, ball_radius, k % 2 == 1, x);
        const double t = rng.uniform(0.0, horizon);
        const double gamma_t = rhs.growth_weight ? rhs.growth_weight(t) : 0.0;
        if (!std::isfinite(gamma_t)) continue;  // singular witness point, a.e. bound
        rhs.eval(x, t, fx);
        const double violation =
            euclidean(fx) - (rhs.growth_constant * euclidean(x) + gamma_t);
        if (violation > report.max_violation) {
            report.max_violation = violation;
            report.witness_x = x;
            report.witness_t = t;
        }
    }
    report.pass = report.max_violation <= report.slack;
    return report;
}

CheckReport check_lipschitz(const CaratheodoryRHS& rhs, double horizon,
                            double ball_radius, std::size_t samples, std::uint64_t seed,
                            std::optional<std::function<double(double)>> weight) {
    if (samples < 1) throw std::domain_error("check_lipschitz: need at least one sample");
    if (!rhs.eval) throw std::domain_error("check_lipschitz: RHS has no evaluator");
    const std::function<double(double)>& ell =
        weight ? *weight : rhs.lipschitz_weight;
    if (!ell)
        throw std::domain_error(
            "check_lipschitz: RHS declares no Lipschitz weight and none was supplied");

    Rng rng(seed);
    CheckReport report;
    report.samples = samples;
    report.max_violation = -std::numeric_limits<double>::infinity();

    std::vector<double> x(rhs.dim), y(rhs.dim), fx(rhs.dim), fy(rhs.dim);
    double max_weight = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const bool near_origin = k % 2 == 1;
        draw_ball_point(rng, ball_radius, near_origin, x);
        if (k % 4 < 2) {
            draw_ball_point(rng, ball_radius, near_origin, y);
        } else {
            // Nearby pair: probes the difference quotient at small separation.
            const double shrink = std::pow(10.0, -6.0 * rng.uniform());
            for (std::size_t j = 0; j < rhs.dim; ++j) y[j] = x[j] * (1.0 - shrink);
        }
        const double t = rng.uniform(0.0, horizon);
        const double ell_t = ell(t);
        if (!std::isfinite(ell_t)) continue;
        max_weight = std::max(max_weight, ell_t);
        rhs.eval(x, t, fx);
        rhs.eval(y, t, fy);
        const double violation =
            euclidean_diff(fx, fy) - ell_t * euclidean_diff(x, y);
        if (violation > report.max_violation) {
            report.max_violation = violation;
            report.witness_x = x;
            report.witness_y = y;
            report.witness_t = t;
        }
    }
    report.slack = 1e-12 * (1.0 + max_weight * 2.0 * ball_radius);
    report.pass = report.max_violation <= report.slack;
    return report;
}

namespace {

CaratheodoryRHS make_zero(const CatalogParams& params) {
    CaratheodoryRHS rhs;
    rhs.dim = params.dim;
    rhs.exponent = params.exponent;
    rhs.growth_constant = 0.0;
    rhs.eval = [](std::span<const double>, double, std::span<double> out) {
        for (double& v : out) v = 0.0;
    };
    rhs.growth_weight = [](double) { return 0.0; };
    rhs.lipschitz_weight = [](double) { return 0.0; };
    rhs.name = "zero";
    return rhs;
}

CaratheodoryRHS make_linear_scalar(const CatalogParams& params) {
    const double lambda = params.lambda;
    CaratheodoryRHS rhs;
    rhs.dim = 1;
    rhs.exponent = params.exponent;
    rhs.growth_constant = std::abs(lambda);
    rhs.eval = [lambda](std::span<const double> x, double, std::span<double> out) {
        out[0] = lambda * x[0];
    };
    rhs.growth_weight = [](double) { return 0.0; };
    rhs.lipschitz_weight = [l = std::abs(lambda)](double) { return l; };
    rhs.name = "linear_scalar";
    return rhs;
}

CaratheodoryRHS make_linear_system(const CatalogParams& params) {
    const std::size_t n = static_cast<std::size_t>(std::sqrt(
        static_cast<double>(params.matrix.size())));
    if (n == 0 || n * n != params.matrix.size())
        throw std::invalid_argument("catalog linear_system: matrix must be square");
    std::vector<double> a = params.matrix;
    std::vector<double> forcing = params.forcing;
    if (forcing.empty()) forcing.assign(n, 0.0);
    if (forcing.size() != n)
        throw std::invalid_argument("catalog linear_system: forcing length mismatch");

    // Frobenius norm, a cheap upper bound of the operator norm.
    double frob = 0.0;
    for (double v : a) frob += v * v;
    frob = std::sqrt(frob);
    double force_norm = 0.0;
    for (double v : forcing) force_norm += v * v;
    force_norm = std::sqrt(force_norm);

    CaratheodoryRHS rhs;
    rhs.dim = n;
    rhs.exponent = params.exponent;
    rhs.growth_constant = frob;
    rhs.eval = [a, forcing, n](std::span<const double> x, double, std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = forcing[i];
            for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
            out[i] = s;
        }
    };
    rhs.growth_weight = [force_norm](double) { return force_norm; };
    rhs.lipschitz_weight = [frob](double) { return frob; };
    rhs.name = "linear_system";
    return rhs;
}

CaratheodoryRHS make_intro_nonuniqueness(const CatalogParams& params) {
    CaratheodoryRHS rhs;
    rhs.dim = 1;
    rhs.exponent = params.exponent;
    rhs.growth_constant = 1.0;
    // f(x,t) = 2 sqrt(x) for t <= 1/2, sqrt(x) after; x clamped at 0.
    // 2 sqrt(x) <= x + 1, so C = 1 with gamma = 1 witnesses the growth bound.
    rhs.eval = [](std::span<const double> x, double t, std::span<double> out) {
        const double root = std::sqrt(std::max(x[0], 0.0));
        out[0] = t <= 0.5 ? 2.0 * root : root;
    };
    rhs.growth_weight = [](double) { return 1.0; };
    rhs.lipschitz_weight = nullptr;  // no valid witness exists near x = 0
    rhs.name = "intro_nonuniqueness";
    return rhs;
}

CaratheodoryRHS make_hl_forced(const CatalogParams& params) {
    if (!params.sigma)
        throw std::invalid_argument("catalog hl_forced: needs a sigma(t) function");
    CaratheodoryRHS rhs;
    rhs.dim = 1;
    rhs.exponent = params.exponent;
    rhs.growth_constant = 1.0;
    rhs.eval = [sigma = params.sigma](std::span<const double> x, double t,
                                      std::span<double> out) {
        out[0] = x[0] + sigma(t);
    };
    rhs.growth_weight = [sigma = params.sigma](double t) { return std::abs(sigma(t)); };
    rhs.lipschitz_weight = [](double) { return 1.0; };
    rhs.name = "hl_forced";
    return rhs;
}

}  // namespace

CaratheodoryRHS catalog(const std::string& name, const CatalogParams& params) {
    if (name == "zero") return make_zero(params);
    if (name == "linear_scalar") return make_linear_scalar(params);
    if (name == "linear_system") return make_linear_system(params);
    if (name == "intro_nonuniqueness") return make_intro_nonuniqueness(params);
    if (name == "hl_forced") return make_hl_forced(params);
    throw std::invalid_argument("catalog: unknown right-hand side '" + name + "'");
}

}  // namespace fracsys
