#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace fracsys {

/// Parameters of the concrete L^p function whose order-1/p fractional
/// integral is unbounded: a power singularity at an interior time t0,
/// tempered by a log power,
///   sigma(s) = (t0 - s)^{-1/p} (c - ln(t0 - s))^{-lambda} for s < t0, else 0.
/// lambda in (1/p, 1] keeps sigma in L^p while J^{1/p} sigma diverges at t0;
/// the shift c keeps the log argument above 1 on [0, t0).
struct HLSpec {
    double p = 2.0;
    double lambda = 1.0;
    double t0 = 0.5;
    double shift = 1.0;    // c
    double horizon = 1.0;  // T

    void validate() const;
};

std::function<double(double)> hl_sigma(const HLSpec& spec);

/// Closed-form ||sigma||_{L^p(0,T)} = [(c - ln t0)^{1-lambda p}/(lambda p - 1)]^{1/p}
/// from the antiderivative of w^{-1}(c - ln w)^{-lambda p}.
double hl_sigma_lp_norm(const HLSpec& spec);

struct UnboundednessRow {
    std::size_t intervals;
    double sup_j;      // sup over nodes of J^order sigma
    double sigma_lp;   // discrete L^p norm of sigma at this level
};

/// For each refinement level, builds a mesh clustered at t0, evaluates
/// J^order sigma by product integration with midpoint samples of sigma
/// (the singular node itself is never evaluated), and reports the running
/// sup alongside the discrete L^p norm. At order = 1/p (the default) the
/// sup column grows without bound across levels while the norm column
/// converges; any order > 1/p makes the sup column stabilize.
std::vector<UnboundednessRow> unboundedness_demo(const HLSpec& spec,
                                                 std::span<const std::size_t> levels,
                                                 std::optional<double> order = {},
                                                 int threads = 1);

/// CSV columns: N,sup_J,sigma_lp_norm
void write_unboundedness_csv(std::span<const UnboundednessRow> rows, std::ostream& os);

/// The introductory nonuniqueness example: f(x,t) = 2 sqrt(x) then sqrt(x),
/// two distinct solutions from xi = 0. phi_2 = 0; phi_1 is t^2 on [0, 1/2]
/// continued by ((t + 1/2)/2)^2, the branch that keeps phi_1 continuous and
/// still solves x' = sqrt(x). Residuals are sup norms of the backward
/// difference quotient minus f, excluding the breakpoint node.
struct NonuniquenessResult {
    std::size_t intervals;
    double residual_phi1;
    double residual_phi2;
    double separation;  // sup-norm distance between the two candidates
};

NonuniquenessResult nonuniqueness_demo(std::size_t intervals);

/// CSV columns: N,res1,res2,separation
void write_nonuniqueness_csv(std::span<const NonuniquenessResult> rows, std::ostream& os);

}  // namespace fracsys
