#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracsys/grid.hpp"
#include "fracsys/orders.hpp"

namespace fracsys {

/// Right-hand side f(x, t) together with the machine-checkable witnesses of
/// the growth bound ||f(x,t)|| <= C||x|| + gamma(t) and, when available, the
/// Lipschitz bound ||f(x,t) - f(y,t)|| <= l(t)||x - y||. The weights gamma
/// and l are required to have finite discrete L^p norms; l is held to the
/// same exponent p as gamma because the contraction argument consumes it in
/// L^p, not merely L^1.
struct CaratheodoryRHS {
    std::size_t dim = 1;
    double exponent = 2.0;       // p
    double growth_constant = 0.0;  // C
    std::function<void(std::span<const double>, double, std::span<double>)> eval;
    std::function<double(double)> growth_weight;               // gamma(t)
    std::function<double(double)> lipschitz_weight;            // l(t), may be empty
    std::string name = "custom";

    bool has_lipschitz_witness() const { return static_cast<bool>(lipschitz_weight); }
};

/// Full problem statement: multi-order system, initial state, right-hand
/// side, horizon and discretization controls.
struct ProblemSpec {
    OrderVector orders;
    std::vector<double> initial;
    CaratheodoryRHS rhs;
    double horizon = 1.0;
    std::size_t intervals = 256;
    double grading = 1.0;
    double tol = 1e-10;
    std::size_t max_iter = 0;  // 0: derived from the predicted n0

    void validate() const;
    GridPtr make_solution_grid() const;
};

/// Nodewise application phi(t_i) -> f(phi(t_i), t_i) on phi's grid.
/// Throws ShapeError on dimension mismatch, EvalError (with the node index)
/// on non-finite output.
GridFunction nemytskii_eval(const CaratheodoryRHS& rhs, const GridFunction& phi);

/// Sampling report for the growth / Lipschitz conditions. The checks can
/// only falsify an a.e. bound, never certify it; a failure carries the
/// worst witness found.
struct CheckReport {
    bool pass = true;
    double max_violation = 0.0;   // worst ||f|| - (C||x|| + gamma) style excess
    double slack = 0.0;           // pass threshold used
    std::size_t samples = 0;
    std::vector<double> witness_x;
    std::vector<double> witness_y;  // Lipschitz check only
    double witness_t = 0.0;
};

/// Draws m points with ||x|| <= R (half of them log-scaled toward the
/// origin, where square-root style kinks live) and t in [0, horizon].
CheckReport check_growth(const CaratheodoryRHS& rhs, double horizon, double ball_radius,
                         std::size_t samples, std::uint64_t seed);

/// Same sampling scheme over pairs (x, y); uses the declared witness unless
/// an override weight is supplied (required when the RHS declares none).
CheckReport check_lipschitz(const CaratheodoryRHS& rhs, double horizon,
                            double ball_radius, std::size_t samples, std::uint64_t seed,
                            std::optional<std::function<double(double)>> weight = {});

/// Parameters for the builtin problem catalog.
struct CatalogParams {
    std::size_t dim = 1;                      // zero
    double lambda = -1.0;                     // linear_scalar
    std::vector<double> matrix;               // linear_system, row-major n x n
    std::vector<double> forcing;              // linear_system, constant forcing
    std::function<double(double)> sigma;      // hl_forced
    double exponent = 2.0;                    // p declared on the result
};

/// Builtin entries: zero, linear_scalar, linear_system, intro_nonuniqueness,
/// hl_forced. Unknown names throw ConfigError-style std::invalid_argument.
CaratheodoryRHS catalog(const std::string& name, const CatalogParams& params = {});

}  // namespace fracsys
