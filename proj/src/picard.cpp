#include "fracsys/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fracsys/csv.hpp"
#include "fracsys/errors.hpp"
#include "fracsys/summation.hpp"

namespace fracsys {
namespace {

GridFunction component(const GridFunction& g, std::size_t j) {
    GridFunction out(g.grid(), 1);
    for (std::size_t i = 0; i < g.nodes(); ++i) out.at(i, 0) = g.at(i, j);
    return out;
}

/// Midpoint-rule L^p norm of a scalar weight; midpoints dodge endpoint
/// singularities of witnesses like t^{-1/4}. Non-finite cells are skipped.
double weight_lp_norm(const std::function<double(double)>& w, const Grid& grid,
                      double p, double scale) {
    if (std::isinf(p)) {
        double best = 0.0;
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const double v = std::abs(scale * w(0.5 * (grid.node(k) + grid.node(k + 1))));
            if (std::isfinite(v)) best = std::max(best, v);
        }
        return best;
    }
    KahanSum acc;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double mid = 0.5 * (grid.node(k) + grid.node(k + 1));
        const double v = std::abs(scale * w(mid));
        if (!std::isfinite(v)) continue;
        acc.add(grid.spacing(k) * std::pow(v, p));
    }
    return std::pow(acc.value(), 1.0 / p);
}

}  // namespace

std::vector<WeightTable> build_order_tables(const ProblemSpec& problem, GridPtr grid,
                                            QuadratureRule rule) {
    std::vector<WeightTable> tables;
    tables.reserve(problem.orders.size());
    for (double alpha : problem.orders) tables.emplace_back(alpha, grid, rule);
    return tables;
}

GridFunction apply_T(const ProblemSpec& problem, const GridFunction& phi,
                     std::span<const WeightTable> tables, int threads) {
    if (tables.size() != problem.orders.size())
        throw ShapeError("apply_T: one weight table per order required");
    const GridFunction f = nemytskii_eval(problem.rhs, phi);
    GridFunction out(phi.grid(), phi.dim());
    for (std::size_t j = 0; j < phi.dim(); ++j) {
        const GridFunction integral = tables[j].apply(component(f, j), threads);
        const double xi_j = problem.initial[j];
        for (std::size_t i = 0; i < out.nodes(); ++i)
            out.at(i, j) = xi_j + integral.at(i, 0);
        out.at(0, j) = xi_j;  // exact initial condition
    }
    return out;
}

SolveReport picard_solve(const ProblemSpec& problem, const SolveOptions& options) {
    problem.validate();
    const GateResult gate = validity_gate(problem.orders, problem.rhs.exponent);
    if (!gate.ok()) throw GateRejection(gate);

    const GridPtr grid = problem.make_solution_grid();
    const std::vector<WeightTable> tables =
        build_order_tables(problem, grid, options.rule);

    SolveReport report{GridFunction(grid, problem.rhs.dim)};
    report.gate = gate;

    // A-priori ledger: the contraction lemma is applied with g = M l and q = p.
    // The classical p = 1 allowance bypasses it (q > 1/rho fails there).
    const double rho = problem.orders.min_order();
    const double p = problem.rhs.exponent;
    if (problem.rhs.has_lipschitz_witness() && p > 1.0 / rho) {
        const double m = multiorder_M(problem.orders, problem.horizon);
        const double g_norm =
            weight_lp_norm(problem.rhs.lipschitz_weight, *grid, p, m);
        report.predicted =
            find_n0(ContractionParams{rho, p, g_norm, problem.horizon});
    }

    std::size_t max_iter = problem.max_iter;
    if (max_iter == 0) {
        const std::size_t predicted_n0 =
            report.predicted && report.predicted->n0 ? *report.predicted->n0 : 0;
        max_iter = std::max<std::size_t>(4 * predicted_n0, 200);
    }

    std::vector<double> start(problem.initial);
    for (double& v : start) v += options.initial_offset;
    GridFunction cur = GridFunction::constant(grid, start);

    double prev_diff = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t iterations = 0;
    while (iterations < max_iter) {
        GridFunction next = apply_T(problem, cur, tables, options.threads);
        const double diff = sup_norm_diff(next, cur);
        report.diffs.push_back(diff);
        ++iterations;
        if (diff <= problem.tol && prev_diff <= problem.tol) {
            // cur differs from T(cur) = next by exactly `diff`: its own
            // integral residual is already below tol.
            report.integral_residual = diff;
            converged = true;
            break;
        }
        cur = std::move(next);
        prev_diff = diff;
    }
    report.iterations = iterations;
    report.converged = converged;
    report.solution = std::move(cur);
    if (!converged)
        report.integral_residual = sup_norm_diff(
            report.solution, apply_T(problem, report.solution, tables, options.threads));

    report.differential_residual =
        residual_check(problem, report.solution, options.threads).differential_residual;
    return report;
}

ResidualPair residual_check(const ProblemSpec& problem, const GridFunction& candidate,
                            int threads) {
    problem.validate();
    if (candidate.dim() != problem.rhs.dim)
        throw ShapeError("residual_check: candidate dimension mismatch");
    const GridPtr grid = candidate.grid();
    const std::vector<WeightTable> tables =
        build_order_tables(problem, grid, QuadratureRule::trapezoid);

    ResidualPair out{};
    out.integral_residual =
        sup_norm_diff(candidate, apply_T(problem, candidate, tables, threads));

    const GridFunction f = nemytskii_eval(problem.rhs, candidate);
    GridFunction residual(grid, candidate.dim());
    for (std::size_t j = 0; j < candidate.dim(); ++j) {
        const CaputoResult cap =
            caputo_l1(problem.orders[j], component(candidate, j), threads);
        for (std::size_t i = 0; i < grid->size(); ++i)
            residual.at(i, j) = cap.values.at(i, 0) - f.at(i, j);
    }
    // The equations hold a.e.: drop node 0 and nodes where a declared
    // witness weight is singular.
    for (std::size_t i = 0; i < grid->size(); ++i) {
        bool masked = i == 0;
        const double t = grid->node(i);
        if (!masked && problem.rhs.growth_weight &&
            !std::isfinite(problem.rhs.growth_weight(t)))
            masked = true;
        if (!masked && problem.rhs.lipschitz_weight &&
            !std::isfinite(problem.rhs.lipschitz_weight(t)))
            masked = true;
        if (masked)
            for (std::size_t j = 0; j < residual.dim(); ++j) residual.at(i, j) = 0.0;
    }
    out.differential_residual = lp_norm(residual, problem.rhs.exponent);
    return out;
}

GridFunction adams_pc_solve(const ProblemSpec& problem) {
    problem.validate();
    const GateResult gate = validity_gate(problem.orders, problem.rhs.exponent);
    if (!gate.ok()) throw GateRejection(gate);

    const GridPtr grid = problem.make_solution_grid();
    const std::size_t n_nodes = grid->size();
    const std::size_t dim = problem.rhs.dim;
    std::vector<WeightTable> rect, trap;
    rect.reserve(dim);
    trap.reserve(dim);
    for (double alpha : problem.orders) {
        rect.emplace_back(alpha, grid, QuadratureRule::rectangle);
        trap.emplace_back(alpha, grid, QuadratureRule::trapezoid);
    }

    GridFunction phi(grid, dim);
    GridFunction history(grid, dim);  // f(phi(t_k), t_k)
    for (std::size_t j = 0; j < dim; ++j) phi.at(0, j) = problem.initial[j];
    problem.rhs.eval(phi.value(0), grid->node(0), history.value(0));
    for (double v : history.value(0))
        if (!std::isfinite(v)) throw EvalError("non-finite RHS value", 0);

    std::vector<double> wrow(n_nodes);
    std::vector<double> predictor(dim), f_pred(dim);
    for (std::size_t i = 1; i < n_nodes; ++i) {
        const double t_i = grid->node(i);
        for (std::size_t j = 0; j < dim; ++j) {
            rect[j].row(i, wrow);
            KahanSum acc;
            for (std::size_t k = 0; k < i; ++k) acc.add(wrow[k] * history.at(k, j));
            predictor[j] = problem.initial[j] + acc.value();
        }
        problem.rhs.eval(predictor, t_i, f_pred);
        for (double v : f_pred)
            if (!std::isfinite(v)) throw EvalError("non-finite RHS value", i);
        for (std::size_t j = 0; j < dim; ++j) {
            trap[j].row(i, wrow);
            KahanSum acc;
            for (std::size_t k = 0; k < i; ++k) acc.add(wrow[k] * history.at(k, j));
            acc.add(wrow[i] * f_pred[j]);
            phi.at(i, j) = problem.initial[j] + acc.value();
        }
        problem.rhs.eval(phi.value(i), t_i, history.value(i));
        for (double v : history.value(i))
            if (!std::isfinite(v)) throw EvalError("non-finite RHS value", i);
    }
    return phi;
}

void SolveReport::write_trace_csv(std::ostream& os) const {
    os << "k,diff\n";
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        os << (k + 1) << ',';
        put_double(os, diffs[k]) << '\n';
    }
}

void SolveReport::write_summary(std::ostream& os) const {
    os << "gate: " << gate.describe() << '\n';
    if (predicted) {
        os << "predicted_n0: ";
        if (predicted->n0)
            os << *predicted->n0;
        else
            os << "not found below n_max (numerical defect)";
        os << '\n';
    } else {
        os << "predicted_n0: unavailable (no Lipschitz witness or classical p = 1)\n";
    }
    os << "iterations: " << iterations << '\n'
       << "converged: " << (converged ? "yes" : "no") << '\n'
       << "integral_residual: " << format_double(integral_residual) << '\n'
       << "differential_residual: " << format_double(differential_residual) << '\n';
}

}  // namespace fracsys
