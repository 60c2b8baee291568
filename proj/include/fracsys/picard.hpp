#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "fracsys/contraction.hpp"
#include "fracsys/fracint.hpp"
#include "fracsys/grid.hpp"
#include "fracsys/rhs.hpp"

namespace fracsys {

/// Thrown when a solve is refused because the hypothesis gate rejects the
/// (orders, p) combination; carries the full gate verdict.
class GateRejection : public std::runtime_error {
public:
    explicit GateRejection(GateResult result)
        : std::runtime_error(result.describe()), result_(result) {}
    const GateResult& result() const { return result_; }

private:
    GateResult result_;
};

struct SolveOptions {
    int threads = 1;
    QuadratureRule rule = QuadratureRule::trapezoid;
    /// Added to every component of the initial iterate phi^0 = xi + offset;
    /// the fixed point must not depend on it.
    double initial_offset = 0.0;
};

struct SolveReport {
    explicit SolveReport(GridFunction initial_solution)
        : solution(std::move(initial_solution)) {}

    GridFunction solution;
    std::size_t iterations = 0;
    std::vector<double> diffs;        // sup-norm successive differences
    std::optional<ContractionReport> predicted;  // a-priori C_n ledger, when l is known
    double integral_residual = 0.0;
    double differential_residual = 0.0;
    GateResult gate;
    bool converged = false;

    void write_trace_csv(std::ostream& os) const;  // k,diff
    void write_summary(std::ostream& os) const;
};

/// One application of the integral operator: component j of the result is
/// xi_j + J^{alpha_j} f_j(phi(.), .). Node 0 is set to xi exactly.
GridFunction apply_T(const ProblemSpec& problem, const GridFunction& phi,
                     std::span<const WeightTable> tables, int threads = 1);

/// Per-component weight tables on the problem grid.
std::vector<WeightTable> build_order_tables(const ProblemSpec& problem, GridPtr grid,
                                            QuadratureRule rule);

/// Global-in-time Picard iteration phi^{k+1} = T(phi^k) from phi^0 = xi.
/// Refuses gate rejections by throwing GateRejection. Stops once two
/// consecutive sup-norm differences are <= tol, which bounds the reported
/// iterate's own integral residual by tol; hitting max_iter flags the
/// report as non-converged instead of failing silently.
SolveReport picard_solve(const ProblemSpec& problem, const SolveOptions& options = {});

struct ResidualPair {
    double integral_residual;
    double differential_residual;
};

/// Integral residual ||phi - T(phi)|| in the sup norm and differential
/// residual: discrete L^p norm over j of caputo_l1(alpha_j, phi_j) - f_j,
/// excluding node 0 and nodes where a declared weight is singular.
ResidualPair residual_check(const ProblemSpec& problem, const GridFunction& candidate,
                            int threads = 1);

/// Fractional Adams predictor-corrector marching scheme (rectangle
/// predictor, trapezoid corrector, one corrector pass per step), applied
/// per equation with its own order. Independent of the Picard route.
GridFunction adams_pc_solve(const ProblemSpec& problem);

}  // namespace fracsys
