#include "fracsys/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "fracsys/boundary.hpp"
#include "fracsys/contraction.hpp"
#include "fracsys/csv.hpp"
#include "fracsys/fracint.hpp"
#include "fracsys/grid.hpp"
#include "fracsys/picard.hpp"
#include "fracsys/random.hpp"
#include "fracsys/rhs.hpp"
#include "fracsys/specfun.hpp"

namespace fracsys::acceptance {
namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

// 1. rl_integral of g = 1 equals t^alpha / Gamma(alpha+1) to 1e-12 absolute.
Check quadrature_exactness(std::uint64_t seed) {
    Check check;
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = rng.uniform(0.05, 1.0);
        const double horizon = rng.uniform(0.3, 3.0);
        const std::size_t intervals = 16 + static_cast<std::size_t>(rng.uniform(0, 1009));
        const double grading = trial % 3 == 0 ? 1.0 : rng.uniform(1.0, 4.0);
        const auto rule =
            trial % 2 == 0 ? QuadratureRule::trapezoid : QuadratureRule::rectangle;
        const GridPtr grid = make_grid(horizon, intervals, grading);
        const WeightTable table(alpha, grid, rule);
        const GridFunction ones = GridFunction::constant(grid, 1.0);
        const GridFunction out = rl_integral(table, ones);
        const double scale = std::exp(-log_gamma(alpha + 1.0));
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double exact = std::pow(grid->node(i), alpha) * scale;
            worst = std::max(worst, std::abs(out.at(i, 0) - exact));
        }
    }
    check.require(worst <= 1e-12, "constant-integrand error " + format_double(worst));
    check.note("max |J^a 1 - t^a/Gamma(a+1)| = " + format_double(worst));
    return check;
}

// 2. Semigroup J^{0.4}J^{0.6} vs J^1 and inversion J^a(cD^a h) vs h - h(0).
Check semigroup_inversion(std::uint64_t) {
    Check check;
    const std::vector<std::size_t> levels{256, 512, 1024, 2048};

    std::vector<double> semi_err;
    for (std::size_t n : levels) {
        const GridPtr grid = make_grid(1.0, n);
        const GridFunction g = GridFunction::sample_scalar(
            grid, [](double t) { return std::cos(t); });
        const WeightTable t06(0.6, grid, QuadratureRule::trapezoid);
        const WeightTable t04(0.4, grid, QuadratureRule::trapezoid);
        const WeightTable t10(1.0, grid, QuadratureRule::trapezoid);
        const GridFunction split = rl_integral(t04, rl_integral(t06, g));
        const GridFunction direct = rl_integral(t10, g);
        semi_err.push_back(sup_norm_diff(split, direct));
    }
    for (std::size_t l = 1; l < semi_err.size(); ++l)
        check.require(semi_err[l] < semi_err[l - 1], "semigroup error not decreasing");
    check.require(semi_err.back() <= 1e-3,
                  "semigroup final error " + format_double(semi_err.back()));

    double worst_final = 0.0;
    for (double alpha : {0.25, 0.5, 0.75}) {
        std::vector<double> inv_err;
        for (std::size_t n : levels) {
            const GridPtr grid = make_grid(1.0, n);
            const GridFunction h = GridFunction::sample_scalar(
                grid, [](double t) { return t * t; });
            const CaputoResult derivative = caputo_l1(alpha, h);
            const WeightTable table(alpha, grid, QuadratureRule::trapezoid);
            const GridFunction back = rl_integral(table, derivative.values);
            double err = 0.0;
            for (std::size_t i = 0; i < grid->size(); ++i) {
                const double t = grid->node(i);
                err = std::max(err, std::abs(back.at(i, 0) - t * t));
            }
            inv_err.push_back(err);
        }
        for (std::size_t l = 1; l < inv_err.size(); ++l)
            check.require(inv_err[l] < inv_err[l - 1],
                          "inversion error not decreasing at alpha " + format_double(alpha));
        check.require(inv_err.back() <= 1e-3,
                      "inversion final error " + format_double(inv_err.back()));
        worst_final = std::max(worst_final, inv_err.back());
    }
    check.note("semigroup final " + format_double(semi_err.back()) + ", inversion final " +
               format_double(worst_final));
    return check;
}

ProblemSpec ml_problem(std::size_t intervals) {
    CatalogParams params;
    params.lambda = -1.0;
    params.exponent = 4.0;
    ProblemSpec problem{OrderVector({0.5}), {1.0}, catalog("linear_scalar", params),
                        1.0,                intervals, 1.0,
                        1e-10,              0};
    return problem;
}

// 3. Solve cD^{1/2} u = -u against the Mittag-Leffler series oracle.
Check mittag_leffler_oracle(std::uint64_t) {
    Check check;
    std::vector<double> errs;
    for (std::size_t n : {256, 512, 1024, 2048, 4096}) {
        const SolveReport report = picard_solve(ml_problem(n), SolveOptions{.threads = 2});
        check.require(report.converged, "solver did not converge at N " + std::to_string(n));
        double err = 0.0;
        for (std::size_t i = 0; i < report.solution.nodes(); ++i) {
            const double t = report.solution.grid()->node(i);
            const double exact = mittag_leffler({0.5, 1.0, -std::sqrt(t)});
            err = std::max(err, std::abs(report.solution.at(i, 0) - exact));
        }
        errs.push_back(err);
    }
    for (std::size_t l = 1; l < errs.size(); ++l)
        check.require(errs[l] < errs[l - 1], "oracle error not monotone under refinement");
    check.require(errs.back() <= 1e-3, "final oracle error " + format_double(errs.back()));
    check.note("sup errors " + format_double(errs.front()) + " .. " +
               format_double(errs.back()));
    return check;
}

// 4. alpha = 1 reproduces e^t.
Check classical_embedding(std::uint64_t) {
    Check check;
    CatalogParams params;
    params.lambda = 1.0;
    params.exponent = 2.0;
    ProblemSpec problem{OrderVector({1.0}), {1.0}, catalog("linear_scalar", params),
                        1.0,                4096,  1.0,
                        1e-12,              0};
    const SolveReport report = picard_solve(problem, SolveOptions{.threads = 2});
    check.require(report.converged, "solver did not converge");
    double err = 0.0;
    for (std::size_t i = 0; i < report.solution.nodes(); ++i) {
        const double t = report.solution.grid()->node(i);
        err = std::max(err, std::abs(report.solution.at(i, 0) - std::exp(t)));
    }
    check.require(err <= 1e-6, "sup error vs e^t is " + format_double(err));
    check.note("sup error vs e^t = " + format_double(err));
    return check;
}

// 5. C_n / ratio consistency, Wendel sandwich, minimal n0, factorial oracle.
Check contraction_ledger(std::uint64_t seed) {
    Check check;
    Rng rng(seed + 1);
    double worst_rel = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const double rho = rng.uniform(0.5, 1.0);
        const bool infinite_q = draw % 3 == 0;
        const double q = infinite_q ? std::numeric_limits<double>::infinity()
                                    : rng.uniform(2.5 / rho, 16.0);
        const double g_norm = draw % 10 == 0 ? 0.0 : rng.uniform(0.05, 2.0);
        const double horizon = rng.uniform(0.3, 2.0);
        const ContractionParams params{rho, q, g_norm, horizon};

        if (g_norm > 0.0) {
            for (std::size_t n = 1; n <= 1000; ++n) {
                const double excess = ratio(params, n) == 0.0
                                          ? 0.0
                                          : std::abs(std::expm1(
                                                std::log(ratio(params, n)) +
                                                log_c_n(params, n) - log_c_n(params, n + 1)));
                worst_rel = std::max(worst_rel, excess);
            }
            const double beta = params.beta().beta;
            for (std::size_t n = 1; n <= 1000; n += 7)
                check.require(wendel_b(beta, n) <= wendel_b_bound(beta, n) + 1e-10,
                              "Wendel bound violated");
        }

        const ContractionReport report = find_n0(params);
        check.require(report.n0.has_value(), "n0 not found");
        if (report.n0) {
            for (std::size_t k = 0; k + 1 < *report.n0; ++k)
                check.require(report.c_values[k] >= 1.0, "n0 not minimal");
            check.require(report.c_values[*report.n0 - 1] < 1.0, "C_{n0} not below 1");
        }
    }
    check.require(worst_rel <= 1e-10,
                  "ratio/c_n consistency " + format_double(worst_rel));

    const ContractionReport classical =
        find_n0({1.0, std::numeric_limits<double>::infinity(), 2.0, 1.0});
    check.require(classical.n0 == std::size_t{4},
                  "classical 2^n/n! oracle expects n0 = 4");
    check.note("worst ratio consistency " + format_double(worst_rel) +
               ", classical n0 = " +
               (classical.n0 ? std::to_string(*classical.n0) : std::string("none")));
    return check;
}

// 6. Boundary gate and the Hardy-Littlewood unboundedness demo.
Check gate_and_unboundedness(std::uint64_t) {
    Check check;
    const GateResult gate = validity_gate(OrderVector({0.5}), 2.0);
    check.require(gate.kind == GateResult::Kind::boundary,
                  "({0.5}, p=2) must be refused as BOUNDARY");

    const HLSpec spec{2.0, 1.0, 0.5, 1.0, 1.0};
    const std::vector<std::size_t> levels{256, 512, 1024, 2048, 4096, 8192, 16384};
    const auto rows = unboundedness_demo(spec, levels, {}, 2);
    for (std::size_t l = 1; l < rows.size(); ++l)
        check.require(rows[l].sup_j > rows[l - 1].sup_j,
                      "sup column not strictly increasing at level " +
                          std::to_string(rows[l].intervals));
    const double norm_diff =
        std::abs(rows.back().sigma_lp - rows[rows.size() - 2].sigma_lp);
    check.require(norm_diff < 1e-3,
                  "sigma L^p column not settled: " + format_double(norm_diff));
    check.require(std::abs(rows.back().sigma_lp - hl_sigma_lp_norm(spec)) < 1e-2,
                  "sigma L^p column far from the closed-form norm");

    const auto bounded = unboundedness_demo(spec, levels, 0.75, 2);
    const double sup_diff =
        std::abs(bounded.back().sup_j - bounded[bounded.size() - 2].sup_j);
    check.require(sup_diff < 1e-2,
                  "companion bounded run did not stabilize: " + format_double(sup_diff));
    check.note("sup " + format_double(rows.front().sup_j) + " -> " +
               format_double(rows.back().sup_j) + ", |sigma|_Lp -> " +
               format_double(rows.back().sigma_lp));
    return check;
}

// 7. Nonuniqueness demo plus the failing Lipschitz check.
Check nonuniqueness(std::uint64_t seed) {
    Check check;
    const NonuniquenessResult demo = nonuniqueness_demo(4096);
    check.require(demo.residual_phi1 <= 1e-3,
                  "phi1 residual " + format_double(demo.residual_phi1));
    check.require(demo.residual_phi2 == 0.0, "phi2 residual must vanish exactly");
    check.require(demo.separation >= 0.5, "separation " + format_double(demo.separation));

    const CaratheodoryRHS rhs = catalog("intro_nonuniqueness");
    const CheckReport lip =
        check_lipschitz(rhs, 1.0, 10.0, 10000, seed + 2,
                        std::function<double(double)>([](double) { return 10.0; }));
    check.require(!lip.pass, "Lipschitz check must fail on intro_nonuniqueness");
    check.require(!lip.witness_x.empty() && std::abs(lip.witness_x[0]) <= 0.1,
                  "violation witness should sit near x = 0");
    check.note("res1 = " + format_double(demo.residual_phi1) + ", separation = " +
               format_double(demo.separation) + ", witness x = " +
               (lip.witness_x.empty() ? std::string("-") : format_double(lip.witness_x[0])));
    return check;
}

ProblemSpec rotation_problem(std::size_t intervals) {
    CatalogParams params;
    params.matrix = {0.0, 1.0, -1.0, 0.0};
    params.exponent = 4.0;
    ProblemSpec problem{OrderVector({0.5, 1.0}), {1.0, 0.0},
                        catalog("linear_system", params),
                        1.0,
                        intervals,
                        1.0,
                        1e-10,
                        0};
    return problem;
}

// 8. Multi-order system: Picard vs Adams, contraction window, uniqueness.
Check multiorder_crosscheck(std::uint64_t) {
    Check check;
    const ProblemSpec problem = rotation_problem(4096);
    const SolveReport report = picard_solve(problem, SolveOptions{.threads = 2});
    check.require(report.converged, "Picard did not converge");

    const GridFunction adams = adams_pc_solve(problem);
    const double cross = sup_norm_diff(report.solution, adams);
    check.require(cross <= 1e-4, "Picard vs Adams disagreement " + format_double(cross));

    check.require(report.predicted && report.predicted->n0, "missing n0 prediction");
    if (report.predicted && report.predicted->n0) {
        const std::size_t window =
            std::min<std::size_t>(*report.predicted->n0, report.diffs.size() - 1);
        check.require(window >= 1, "trace too short for a contraction window");
        for (std::size_t k = 0; k + window < report.diffs.size(); ++k)
            check.require(report.diffs[k + window] < report.diffs[k],
                          "window contraction factor not below 1");
    }

    const SolveReport shifted =
        picard_solve(problem, SolveOptions{.threads = 2, .initial_offset = 1.0});
    check.require(shifted.converged, "shifted start did not converge");
    const double gap = sup_norm_diff(report.solution, shifted.solution);
    check.require(gap <= 2.0 * problem.tol,
                  "distinct starts ended " + format_double(gap) + " apart");
    check.note("cross-method gap " + format_double(cross) + ", predicted n0 " +
               std::to_string(report.predicted && report.predicted->n0
                                  ? *report.predicted->n0
                                  : 0) +
               ", start-independence gap " + format_double(gap));
    return check;
}

// 9. Byte-identical solution CSVs for thread counts 1 and 4.
Check determinism(std::uint64_t) {
    Check check;
    const ProblemSpec problem = rotation_problem(4096);
    std::string csv[2];
    const int thread_counts[2] = {1, 4};
    for (int v = 0; v < 2; ++v) {
        const SolveReport report =
            picard_solve(problem, SolveOptions{.threads = thread_counts[v]});
        std::ostringstream os;
        report.solution.write_csv(os);
        csv[v] = os.str();
    }
    check.require(!csv[0].empty() && csv[0] == csv[1],
                  "solution CSVs differ between 1 and 4 threads");
    check.note("CSV bytes " + std::to_string(csv[0].size()) + ", identical");
    return check;
}

using CriterionFn = Check (*)(std::uint64_t);

struct Criterion {
    int id;
    const char* name;
    CriterionFn fn;
    double budget_seconds;  // 0: no stated budget
};

constexpr Criterion kCriteria[] = {
    {1, "quadrature exactness on constants", quadrature_exactness, 5.0},
    {2, "semigroup and inversion refinement", semigroup_inversion, 30.0},
    {3, "Mittag-Leffler solver oracle", mittag_leffler_oracle, 60.0},
    {4, "classical exponential embedding", classical_embedding, 0.0},
    {5, "contraction constants ledger", contraction_ledger, 10.0},
    {6, "hypothesis gate and unboundedness demo", gate_and_unboundedness, 120.0},
    {7, "nonuniqueness demo", nonuniqueness, 0.0},
    {8, "multi-order cross-check", multiorder_crosscheck, 0.0},
    {9, "thread-count determinism", determinism, 0.0},
};

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed, std::ostream* progress) {
    std::vector<CriterionResult> results;
    for (const Criterion& criterion : kCriteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result{criterion.id, criterion.name, false, "", 0.0};
        try {
            Check check = criterion.fn(seed);
            result.pass = check.pass;
            result.detail = check.detail.str();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && result.seconds > criterion.budget_seconds) {
            result.pass = false;
            result.detail += (result.detail.empty() ? "" : "; ") + std::string(
                "exceeded the ") + format_double(criterion.budget_seconds) +
                " s runtime budget";
        }
        if (progress) {
            (*progress) << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << result.id
                        << ": " << result.name << " (" << format_double(result.seconds)
                        << " s)" << (result.detail.empty() ? "" : " -- ") << result.detail
                        << '\n'
                        << std::flush;
        }
        results.push_back(std::move(result));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace fracsys::acceptance
