#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracsys/boundary.hpp"
#include "fracsys/contraction.hpp"
#include "fracsys/picard.hpp"
#include "fracsys/rhs.hpp"

namespace fracsys {

/// Line-oriented `key = value` configuration with `[section]` headers,
/// comma-separated lists, `#`/`;` comments. Unknown sections or keys are
/// rejected with the offending line.
struct ProblemConfig {
    std::vector<double> orders{1.0};
    std::vector<double> initial{0.0};
    std::string rhs_name = "zero";
    std::vector<double> matrix;
    std::vector<double> forcing;
    double lambda = -1.0;
    double sigma_p = 2.0;
    double sigma_lambda = 1.0;
    double sigma_t0 = 0.5;
    double sigma_c = 1.0;
    double exponent = 2.0;  // p
    double horizon = 1.0;   // T
    std::size_t intervals = 256;  // N
    double grading = 1.0;         // r
    double tol = 1e-10;
    std::size_t max_iter = 0;
    int threads = 1;
    std::string rule = "trapezoid";

    bool operator==(const ProblemConfig&) const = default;
};

struct ContractionConfig {
    double rho = 0.5;
    double q = 2.0;  // "inf" accepted
    double g_norm = 1.0;
    double horizon = 1.0;
    std::size_t n_max = 1'000'000;

    bool operator==(const ContractionConfig&) const = default;
};

struct BoundaryConfig {
    std::string mode = "hl";  // hl | nonunique
    double p = 2.0;
    double lambda = 1.0;
    double t0 = 0.5;
    double c = 1.0;
    double horizon = 1.0;
    std::optional<double> alpha;  // transform order override (hl mode)
    std::vector<std::size_t> levels{256, 512, 1024, 2048, 4096, 8192, 16384};
    std::size_t intervals = 4096;  // nonunique mode

    bool operator==(const BoundaryConfig&) const = default;
};

struct Config {
    std::optional<ProblemConfig> problem;
    std::optional<ContractionConfig> contraction;
    std::optional<BoundaryConfig> boundary;

    bool operator==(const Config&) const = default;

    static Config parse(std::istream& in);
    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path);

    /// Emits every present section with every key; parse(serialize()) is the
    /// identity on Config.
    std::string serialize() const;

    /// Builders; throw ConfigError / std::invalid_argument on semantic errors.
    ProblemSpec to_problem() const;
    SolveOptions to_solve_options() const;
    ContractionParams to_contraction_params() const;
    HLSpec to_hl_spec() const;
};

}  // namespace fracsys
