#pragma once

namespace fracsys {

/// ln Gamma(x) for x > 0 by a Lanczos rational approximation
/// (N=13, g=6.02468...), relative error below 1e-13 on [1e-3, 1e4].
/// Throws std::domain_error for x <= 0 or non-finite x.
double log_gamma(double x);

/// Gamma(x) for x > 0; overflows to +inf beyond x ~ 171.62.
double gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a, b > 0.
double log_beta(double a, double b);
double beta(double a, double b);

/// Two-parameter Mittag-Leffler series E_{alpha,beta}(z).
struct MLParams {
    double alpha;  // series exponent step, > 0
    double beta;   // offset parameter, > 0
    double z;      // argument, |z| <= ml_z_max

    void validate() const;
};

/// Evaluation cap for the plain series; larger arguments are rejected.
inline constexpr double ml_z_max = 50.0;

/// Sum_{k>=0} z^k / Gamma(alpha*k + beta), truncated when the next term
/// falls below 1e-15 * (1 + |partial sum|). Terms and the partial sum are
/// carried in double-double so alternating cancellation up to ~1e12 still
/// leaves full double accuracy.
double mittag_leffler(const MLParams& params);

/// Wendel's inequality (x/(x+a))^{1-a} <= Gamma(x+a)/(x^a Gamma(x)) <= 1
/// for x > 0, 0 < a <= 1.
struct WendelCheck {
    double lower;
    double ratio;
    double upper;
    bool holds(double slack = 1e-10) const {
        return lower <= ratio + slack && ratio <= upper + slack;
    }
};

WendelCheck wendel_check(double x, double a);

}  // namespace fracsys
