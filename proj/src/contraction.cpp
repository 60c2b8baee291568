#include "fracsys/contraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracsys/csv.hpp"
#include "fracsys/errors.hpp"
#include "fracsys/specfun.hpp"

namespace fracsys {
namespace {

constexpr double kLogSaturation = 700.0;

double exp_saturated(double log_value, bool* saturated) {
    if (log_value > kLogSaturation) {
        if (saturated) *saturated = true;
        return std::numeric_limits<double>::infinity();
    }
    if (log_value < -kLogSaturation) {
        if (saturated) *saturated = true;
        return 0.0;
    }
    return std::exp(log_value);
}

}  // namespace

BetaConjugate derive_beta(double rho, double q) {
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw HypothesisError("derive_beta: rho must lie in (0, 1]");
    if (std::isinf(q)) return {rho, 1.0};
    if (!(q > 1.0 / rho))
        throw HypothesisError("derive_beta: needs q > 1/rho");
    return {(rho * q - 1.0) / (q - 1.0), q / (q - 1.0)};
}

void ContractionParams::validate() const {
    derive_beta(rho, q);  // throws on bad (rho, q)
    if (!(g_norm >= 0.0) || !std::isfinite(g_norm))
        throw HypothesisError("ContractionParams: g_norm must be >= 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw HypothesisError("ContractionParams: horizon must be positive");
}

BetaConjugate ContractionParams::beta() const { return derive_beta(rho, q); }

double log_c_n(const ContractionParams& params, std::size_t n) {
    params.validate();
    if (n < 1) throw std::domain_error("log_c_n: n must be >= 1");
    if (params.g_norm == 0.0) return -std::numeric_limits<double>::infinity();

    const auto [beta, q_star] = params.beta();
    const double nn = static_cast<double>(n);
    const double inv_q = std::isinf(params.q) ? 0.0 : 1.0 / params.q;
    return nn * (std::log(params.g_norm) - log_gamma(params.rho)) +
           (1.0 / q_star) *
               (nn * log_gamma(beta) - std::log(nn * beta) - log_gamma(nn * beta)) +
           nn * (params.rho - inv_q) * std::log(params.horizon);
}

CnValue c_n(const ContractionParams& params, std::size_t n) {
    const double lv = log_c_n(params, n);
    if (std::isinf(lv) && lv < 0.0) return {0.0, lv, false};
    bool saturated = false;
    const double v = exp_saturated(lv, &saturated);
    return {v, lv, saturated};
}

double ratio(const ContractionParams& params, std::size_t n) {
    params.validate();
    if (n < 1) throw std::domain_error("ratio: n must be >= 1");
    if (params.g_norm == 0.0) return 0.0;

    const auto [beta, q_star] = params.beta();
    const double nn = static_cast<double>(n);
    const double inv_q = std::isinf(params.q) ? 0.0 : 1.0 / params.q;
    const double log_ratio =
        std::log(params.g_norm) + (params.rho - inv_q) * std::log(params.horizon) -
        log_gamma(params.rho) +
        (1.0 / q_star) * (log_gamma(beta) + std::log(nn) + log_gamma(nn * beta) -
                          std::log(nn + 1.0) - log_gamma((nn + 1.0) * beta));
    return exp_saturated(log_ratio, nullptr);
}

double wendel_b(double beta, std::size_t n) {
    if (!(beta > 0.0)) throw std::domain_error("wendel_b: beta must be positive");
    const double nn = static_cast<double>(n);
    return std::exp(std::log(nn) + log_gamma(nn * beta) - std::log(nn + 1.0) -
                    log_gamma((nn + 1.0) * beta));
}

double wendel_b_bound(double beta, std::size_t n) {
    if (!(beta > 0.0)) throw std::domain_error("wendel_b_bound: beta must be positive");
    return std::pow((static_cast<double>(n) + 1.0) * beta, -beta);
}

void ContractionReport::write_csv(std::ostream& os) const {
    os << "n,C_n,ratio,B_n,bound\n";
    for (std::size_t k = 0; k < c_values.size(); ++k) {
        os << (k + 1) << ',';
        put_double(os, c_values[k]) << ',';
        put_double(os, ratios[k]) << ',';
        put_double(os, wendel_values[k]) << ',';
        put_double(os, wendel_bounds[k]) << '\n';
    }
}

ContractionReport find_n0(const ContractionParams& params, std::size_t n_max) {
    params.validate();
    ContractionReport report;
    report.params = params;
    const double beta = params.beta().beta;

    for (std::size_t n = 1; n <= n_max; ++n) {
        const CnValue cn = c_n(params, n);
        report.c_values.push_back(cn.value);
        report.log_c_values.push_back(cn.log_value);
        report.ratios.push_back(ratio(params, n));
        report.wendel_values.push_back(wendel_b(beta, n));
        report.wendel_bounds.push_back(wendel_b_bound(beta, n));
        if (cn.log_value < 0.0) {
            report.n0 = n;
            return report;
        }
    }
    report.exhausted = true;
    return report;
}

double multiorder_M(const OrderVector& alphas, double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("multiorder_M: horizon must be positive");
    const double alpha0 = alphas.min_order();
    const double lg0 = log_gamma(alpha0);
    const double log_t = std::log(horizon);
    double m = 0.0;
    for (double a : alphas) m += std::exp((a - alpha0) * log_t + lg0 - log_gamma(a));
    return m;
}

std::string GateResult::describe() const {
    switch (kind) {
        case Kind::ok:
            return "ok: p exceeds max{1/alpha_j}";
        case Kind::boundary:
            return "BOUNDARY: alpha_" + std::to_string(offending_index + 1) +
                   " equals 1/p; at this order the fractional integral of an L^p "
                   "right-hand side can be unbounded and the problem may not admit "
                   "a solution";
        case Kind::insufficient:
            return "INSUFFICIENT: p = " + format_double(exponent) +
                   " does not exceed 1/alpha_" + std::to_string(offending_index + 1) +
                   " = " + format_double(required_exponent);
    }
    return {};
}

GateResult validity_gate(const OrderVector& alphas, double p) {
    GateResult res;
    res.exponent = p;
    res.required_exponent = alphas.required_exponent();

    // Classical allowance: every order 1 admits p = 1.
    bool all_classical = true;
    for (double a : alphas) all_classical = all_classical && a == 1.0;
    if (all_classical && p >= 1.0) {
        res.kind = GateResult::Kind::ok;
        return res;
    }

    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (std::abs(alphas[j] * p - 1.0) <= gate_boundary_tolerance) {
            res.kind = GateResult::Kind::boundary;
            res.offending_index = j;
            return res;
        }
    }
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (alphas[j] * p < 1.0) {
            res.kind = GateResult::Kind::insufficient;
            res.offending_index = j;
            return res;
        }
    }
    res.kind = GateResult::Kind::ok;
    return res;
}

}  // namespace fracsys
