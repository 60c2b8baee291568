#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fracsys/acceptance.hpp"
#include "fracsys/boundary.hpp"
#include "fracsys/config.hpp"
#include "fracsys/contraction.hpp"
#include "fracsys/csv.hpp"
#include "fracsys/errors.hpp"
#include "fracsys/picard.hpp"

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
}

int cmd_solve(const std::string& config_path, const fs::path& out_dir,
              std::uint64_t seed) {
    const fracsys::Config config = fracsys::Config::parse_file(config_path);
    const fracsys::ProblemSpec problem = config.to_problem();
    const fracsys::SolveOptions options = config.to_solve_options();

    try {
        const fracsys::SolveReport report = fracsys::picard_solve(problem, options);

        auto solution = open_output(out_dir, "solution.csv");
        report.solution.write_csv(solution);
        auto trace = open_output(out_dir, "trace.csv");
        report.write_trace_csv(trace);

        auto summary = open_output(out_dir, "summary.txt");
        report.write_summary(summary);
        const auto growth =
            fracsys::check_growth(problem.rhs, problem.horizon, 10.0, 2000, seed);
        summary << "growth_witness: " << (growth.pass ? "pass" : "FAIL")
                << " (max violation " << fracsys::format_double(growth.max_violation)
                << ")\n";
        if (problem.rhs.has_lipschitz_witness()) {
            const auto lipschitz = fracsys::check_lipschitz(problem.rhs, problem.horizon,
                                                            10.0, 2000, seed);
            summary << "lipschitz_witness: " << (lipschitz.pass ? "pass" : "FAIL")
                    << " (max violation "
                    << fracsys::format_double(lipschitz.max_violation) << ")\n";
        } else {
            summary << "lipschitz_witness: none declared\n";
        }

        if (!report.converged) {
            std::cerr << "solve: not converged within " << report.iterations
                      << " iterations (last diff "
                      << fracsys::format_double(report.diffs.back()) << ")\n";
            return 3;
        }
        std::cout << "solve: converged in " << report.iterations
                  << " iterations, residual "
                  << fracsys::format_double(report.integral_residual) << '\n';
        return 0;
    } catch (const fracsys::GateRejection& rejection) {
        auto summary = open_output(out_dir, "summary.txt");
        summary << "gate: " << rejection.result().describe() << '\n';
        std::cerr << "solve refused: " << rejection.result().describe() << '\n';
        return 2;
    }
}

int cmd_contraction(const std::string& config_path, const fs::path& out_dir) {
    const fracsys::Config config = fracsys::Config::parse_file(config_path);
    const fracsys::ContractionParams params = config.to_contraction_params();
    const fracsys::ContractionReport report =
        fracsys::find_n0(params, config.contraction->n_max);

    auto csv = open_output(out_dir, "contraction.csv");
    report.write_csv(csv);
    auto summary = open_output(out_dir, "summary.txt");
    if (report.n0) {
        summary << "n0: " << *report.n0 << '\n';
        std::cout << "contraction: n0 = " << *report.n0 << '\n';
    } else {
        summary << "n0: not found below n_max (numerical defect)\n";
        std::cout << "contraction: n0 not found below n_max\n";
    }
    return 0;
}

int cmd_boundary(const std::string& config_path, const fs::path& out_dir, int threads) {
    const fracsys::Config config = fracsys::Config::parse_file(config_path);
    if (!config.boundary) throw std::runtime_error("config has no [boundary] section");
    const auto& bc = *config.boundary;

    if (bc.mode == "hl") {
        const fracsys::HLSpec spec = config.to_hl_spec();
        const auto rows =
            fracsys::unboundedness_demo(spec, bc.levels, bc.alpha, threads);
        auto csv = open_output(out_dir, "hl.csv");
        fracsys::write_unboundedness_csv(rows, csv);
        std::cout << "boundary hl: sup grew from "
                  << fracsys::format_double(rows.front().sup_j) << " to "
                  << fracsys::format_double(rows.back().sup_j) << " over "
                  << rows.size() << " levels\n";
        return 0;
    }
    std::vector<fracsys::NonuniquenessResult> rows;
    for (std::size_t n = 16; n <= bc.intervals; n *= 4)
        rows.push_back(fracsys::nonuniqueness_demo(n));
    if (rows.empty() || rows.back().intervals != bc.intervals)
        rows.push_back(fracsys::nonuniqueness_demo(bc.intervals));
    auto csv = open_output(out_dir, "nonunique.csv");
    fracsys::write_nonuniqueness_csv(rows, csv);
    std::cout << "boundary nonunique: separation "
              << fracsys::format_double(rows.back().separation) << ", residuals "
              << fracsys::format_double(rows.back().residual_phi1) << " / "
              << fracsys::format_double(rows.back().residual_phi2) << '\n';
    return 0;
}

int cmd_selftest(std::uint64_t seed) {
    const auto results = fracsys::acceptance::run_all(seed, &std::cout);
    return fracsys::acceptance::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for semilinear systems of fractional differential equations "
                 "with distinct Caputo orders"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 42;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "configuration file");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "seed for sampled checks");
    };

    auto* solve = app.add_subcommand("solve", "run the Picard solver");
    add_common(solve, true);
    auto* contraction = app.add_subcommand("contraction", "evaluate the C_n ledger");
    add_common(contraction, true);
    auto* boundary = app.add_subcommand("boundary", "nonexistence / nonuniqueness demos");
    add_common(boundary, true);
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(selftest, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path, out_dir, seed);
        if (contraction->parsed()) return cmd_contraction(config_path, out_dir);
        if (boundary->parsed()) {
            const fracsys::Config config = fracsys::Config::parse_file(config_path);
            const int threads =
                config.problem ? config.problem->threads : 1;
            return cmd_boundary(config_path, out_dir, threads);
        }
        return cmd_selftest(seed);
    } catch (const fracsys::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
