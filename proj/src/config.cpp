#include "fracsys/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "fracsys/csv.hpp"
#include "fracsys/errors.hpp"

namespace fracsys {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, std::size_t line, const std::string& key) {
    const std::string v = trim(value);
    double out = 0.0;
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("expected a number, got '" + v + "'", line, key);
    return out;
}

std::size_t parse_size(const std::string& value, std::size_t line, const std::string& key) {
    const std::string v = trim(value);
    std::size_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("expected a nonnegative integer, got '" + v + "'", line, key);
    return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& value, std::size_t line,
                          const std::string& key, Parse parse_one) {
    std::vector<T> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) out.push_back(parse_one(item, line, key));
    if (out.empty()) throw ConfigError("expected a non-empty list", line, key);
    return out;
}

void set_problem_key(ProblemConfig& p, const std::string& key, const std::string& value,
                     std::size_t line) {
    if (key == "orders")
        p.orders = parse_list<double>(value, line, key, parse_double);
    else if (key == "initial")
        p.initial = parse_list<double>(value, line, key, parse_double);
    else if (key == "rhs")
        p.rhs_name = trim(value);
    else if (key == "matrix")
        p.matrix = parse_list<double>(value, line, key, parse_double);
    else if (key == "forcing")
        p.forcing = parse_list<double>(value, line, key, parse_double);
    else if (key == "lambda")
        p.lambda = parse_double(value, line, key);
    else if (key == "sigma_p")
        p.sigma_p = parse_double(value, line, key);
    else if (key == "sigma_lambda")
        p.sigma_lambda = parse_double(value, line, key);
    else if (key == "sigma_t0")
        p.sigma_t0 = parse_double(value, line, key);
    else if (key == "sigma_c")
        p.sigma_c = parse_double(value, line, key);
    else if (key == "p")
        p.exponent = parse_double(value, line, key);
    else if (key == "T")
        p.horizon = parse_double(value, line, key);
    else if (key == "N")
        p.intervals = parse_size(value, line, key);
    else if (key == "r") {
        // `auto` grades by 1/min(alpha_j), capped at 4.
        if (trim(value) == "auto")
            p.grading = 0.0;
        else
            p.grading = parse_double(value, line, key);
    } else if (key == "tol")
        p.tol = parse_double(value, line, key);
    else if (key == "max_iter")
        p.max_iter = parse_size(value, line, key);
    else if (key == "threads")
        p.threads = static_cast<int>(parse_size(value, line, key));
    else if (key == "rule") {
        p.rule = trim(value);
        if (p.rule != "trapezoid" && p.rule != "rectangle")
            throw ConfigError("rule must be trapezoid or rectangle", line, key);
    } else
        throw ConfigError("unknown key in [problem]", line, key);
}

void set_contraction_key(ContractionConfig& c, const std::string& key,
                         const std::string& value, std::size_t line) {
    if (key == "rho")
        c.rho = parse_double(value, line, key);
    else if (key == "q")
        c.q = parse_double(value, line, key);
    else if (key == "g_norm")
        c.g_norm = parse_double(value, line, key);
    else if (key == "T")
        c.horizon = parse_double(value, line, key);
    else if (key == "n_max")
        c.n_max = parse_size(value, line, key);
    else
        throw ConfigError("unknown key in [contraction]", line, key);
}

void set_boundary_key(BoundaryConfig& b, const std::string& key, const std::string& value,
                      std::size_t line) {
    if (key == "mode") {
        b.mode = trim(value);
        if (b.mode != "hl" && b.mode != "nonunique")
            throw ConfigError("mode must be hl or nonunique", line, key);
    } else if (key == "p")
        b.p = parse_double(value, line, key);
    else if (key == "lambda")
        b.lambda = parse_double(value, line, key);
    else if (key == "t0")
        b.t0 = parse_double(value, line, key);
    else if (key == "c")
        b.c = parse_double(value, line, key);
    else if (key == "T")
        b.horizon = parse_double(value, line, key);
    else if (key == "alpha")
        b.alpha = parse_double(value, line, key);
    else if (key == "levels")
        b.levels = parse_list<std::size_t>(value, line, key, parse_size);
    else if (key == "N")
        b.intervals = parse_size(value, line, key);
    else
        throw ConfigError("unknown key in [boundary]", line, key);
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string section;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section == "problem") {
                if (!cfg.problem) cfg.problem.emplace();
            } else if (section == "contraction") {
                if (!cfg.contraction) cfg.contraction.emplace();
            } else if (section == "boundary") {
                if (!cfg.boundary) cfg.boundary.emplace();
            } else {
                throw ConfigError("unknown section '" + section + "'", line_no);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (section.empty())
            throw ConfigError("key outside any [section]", line_no, key);
        if (section == "problem")
            set_problem_key(*cfg.problem, key, value, line_no);
        else if (section == "contraction")
            set_contraction_key(*cfg.contraction, key, value, line_no);
        else
            set_boundary_key(*cfg.boundary, key, value, line_no);
    }
    return cfg;
}

Config Config::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse(in);
}

namespace {

void join(std::ostream& os, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << format_double(values[i]);
    }
}

void join(std::ostream& os, const std::vector<std::size_t>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i];
    }
}

}  // namespace

std::string Config::serialize() const {
    std::ostringstream os;
    if (problem) {
        const auto& p = *problem;
        os << "[problem]\n";
        os << "orders = ";
        join(os, p.orders);
        os << "\ninitial = ";
        join(os, p.initial);
        os << "\nrhs = " << p.rhs_name << '\n';
        if (!p.matrix.empty()) {
            os << "matrix = ";
            join(os, p.matrix);
            os << '\n';
        }
        if (!p.forcing.empty()) {
            os << "forcing = ";
            join(os, p.forcing);
            os << '\n';
        }
        os << "lambda = " << format_double(p.lambda) << '\n'
           << "sigma_p = " << format_double(p.sigma_p) << '\n'
           << "sigma_lambda = " << format_double(p.sigma_lambda) << '\n'
           << "sigma_t0 = " << format_double(p.sigma_t0) << '\n'
           << "sigma_c = " << format_double(p.sigma_c) << '\n'
           << "p = " << format_double(p.exponent) << '\n'
           << "T = " << format_double(p.horizon) << '\n'
           << "N = " << p.intervals << '\n'
           << "r = " << (p.grading == 0.0 ? std::string("auto") : format_double(p.grading))
           << '\n'
           << "tol = " << format_double(p.tol) << '\n'
           << "max_iter = " << p.max_iter << '\n'
           << "threads = " << p.threads << '\n'
           << "rule = " << p.rule << '\n';
    }
    if (contraction) {
        const auto& c = *contraction;
        os << "[contraction]\n"
           << "rho = " << format_double(c.rho) << '\n'
           << "q = " << format_double(c.q) << '\n'
           << "g_norm = " << format_double(c.g_norm) << '\n'
           << "T = " << format_double(c.horizon) << '\n'
           << "n_max = " << c.n_max << '\n';
    }
    if (boundary) {
        const auto& b = *boundary;
        os << "[boundary]\n"
           << "mode = " << b.mode << '\n'
           << "p = " << format_double(b.p) << '\n'
           << "lambda = " << format_double(b.lambda) << '\n'
           << "t0 = " << format_double(b.t0) << '\n'
           << "c = " << format_double(b.c) << '\n'
           << "T = " << format_double(b.horizon) << '\n';
        if (b.alpha) os << "alpha = " << format_double(*b.alpha) << '\n';
        os << "levels = ";
        join(os, b.levels);
        os << "\nN = " << b.intervals << '\n';
    }
    return os.str();
}

ProblemSpec Config::to_problem() const {
    if (!problem) throw std::invalid_argument("config has no [problem] section");
    const auto& p = *problem;

    CatalogParams params;
    params.dim = p.orders.size();
    params.lambda = p.lambda;
    params.matrix = p.matrix;
    params.forcing = p.forcing;
    params.exponent = p.exponent;
    if (p.rhs_name == "hl_forced") {
        HLSpec hl{p.sigma_p, p.sigma_lambda, p.sigma_t0, p.sigma_c, p.horizon};
        params.sigma = hl_sigma(hl);
    }
    CaratheodoryRHS rhs = catalog(p.rhs_name, params);
    rhs.exponent = p.exponent;

    OrderVector orders(p.orders);
    double grading = p.grading;
    if (grading == 0.0) grading = std::clamp(1.0 / orders.min_order(), 1.0, 4.0);

    ProblemSpec spec{std::move(orders), p.initial, std::move(rhs),
                     p.horizon,         p.intervals, grading,
                     p.tol,             p.max_iter};
    spec.validate();
    return spec;
}

SolveOptions Config::to_solve_options() const {
    if (!problem) throw std::invalid_argument("config has no [problem] section");
    SolveOptions options;
    options.threads = problem->threads;
    options.rule = problem->rule == "rectangle" ? QuadratureRule::rectangle
                                                : QuadratureRule::trapezoid;
    return options;
}

ContractionParams Config::to_contraction_params() const {
    if (!contraction) throw std::invalid_argument("config has no [contraction] section");
    const auto& c = *contraction;
    ContractionParams params{c.rho, c.q, c.g_norm, c.horizon};
    params.validate();
    return params;
}

HLSpec Config::to_hl_spec() const {
    if (!boundary) throw std::invalid_argument("config has no [boundary] section");
    const auto& b = *boundary;
    HLSpec spec{b.p, b.lambda, b.t0, b.c, b.horizon};
    spec.validate();
    return spec;
}

}  // namespace fracsys
