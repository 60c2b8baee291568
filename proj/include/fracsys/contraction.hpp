#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fracsys/orders.hpp"

namespace fracsys {

/// beta = (rho q - 1)/(q - 1) and the Hoelder conjugate q* = q/(q - 1);
/// q may be +inf, giving (rho, 1).
struct BetaConjugate {
    double beta;
    double q_star;
};

/// Throws HypothesisError unless rho in (0, 1] and q > 1/rho.
BetaConjugate derive_beta(double rho, double q);

/// Inputs of the iterated-integral bound: order rho (instantiated as the
/// minimum system order), integrability exponent q (as p), the L^q norm of
/// the weight g (as ||M l||), and the horizon.
struct ContractionParams {
    double rho;
    double q;  // may be +inf
    double g_norm;
    double horizon;

    void validate() const;
    BetaConjugate beta() const;
};

/// C_n = [||g||/Gamma(rho)]^n [Gamma(beta)^n/(n beta Gamma(n beta))]^{1/q*}
///       T^{n(rho - 1/q)}, evaluated in log space.
double log_c_n(const ContractionParams& params, std::size_t n);

struct CnValue {
    double value;      // exp(log_value), saturated to 0 or +inf on overflow
    double log_value;
    bool saturated;    // |log_value| > 700
};

CnValue c_n(const ContractionParams& params, std::size_t n);

/// C_{n+1}/C_n in closed form; agrees with c_n quotients to ~1e-12 relative.
double ratio(const ContractionParams& params, std::size_t n);

/// B_n = n Gamma(n beta) / ((n+1) Gamma((n+1) beta)) and its Wendel bound
/// 1/((n+1) beta)^beta.
double wendel_b(double beta, std::size_t n);
double wendel_b_bound(double beta, std::size_t n);

struct ContractionReport {
    ContractionParams params;
    std::vector<double> c_values;      // C_1 .. C_m
    std::vector<double> log_c_values;
    std::vector<double> ratios;        // C_{n+1}/C_n at n = 1 .. m
    std::vector<double> wendel_values; // B_n
    std::vector<double> wendel_bounds;
    std::optional<std::size_t> n0;     // first n with C_n < 1
    bool exhausted = false;            // scan hit n_max without C_n < 1

    /// CSV columns: n,C_n,ratio,B_n,bound
    void write_csv(std::ostream& os) const;
};

/// Scans n = 1, 2, ... for the first C_n < 1. The series sum C_n converges,
/// so failure to find n0 below n_max indicates a numerical defect and is
/// reported via `exhausted`, never silently.
ContractionReport find_n0(const ContractionParams& params,
                          std::size_t n_max = 1'000'000);

/// M = sum_j T^{alpha_j - alpha_0} Gamma(alpha_0)/Gamma(alpha_j) with
/// alpha_0 = min alpha_j.
double multiorder_M(const OrderVector& alphas, double horizon);

/// Hypothesis gate p > max{1/alpha_j}, with the classical allowance p = 1
/// when every order equals 1. Orders sitting on alpha_j = 1/p (within 1e-12)
/// are flagged as the nonexistence boundary.
struct GateResult {
    enum class Kind { ok, boundary, insufficient };
    Kind kind = Kind::ok;
    std::size_t offending_index = 0;
    double exponent = 0.0;
    double required_exponent = 0.0;

    bool ok() const { return kind == Kind::ok; }
    std::string describe() const;
};

GateResult validity_gate(const OrderVector& alphas, double p);

inline constexpr double gate_boundary_tolerance = 1e-12;

}  // namespace fracsys
