#pragma once

#include <cmath>

namespace fracsys {

/// Neumaier-compensated accumulator. Error is O(eps) in the sum of
/// magnitudes instead of O(n*eps).
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Minimal double-double arithmetic (~31 significant digits), enough for
/// alternating series whose partial terms dwarf the limit.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    static DoubleDouble from(double x) { return {x, 0.0}; }
    double to_double() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return {p, err};
}

inline DoubleDouble add(DoubleDouble a, double b) {
    DoubleDouble s = two_sum(a.hi, b);
    s.lo += a.lo;
    const DoubleDouble r = two_sum(s.hi, s.lo);
    return r;
}

inline DoubleDouble add(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return two_sum(s.hi, s.lo);
}

inline DoubleDouble mul(DoubleDouble a, double b) {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

inline DoubleDouble div(DoubleDouble a, double b) {
    const double q1 = a.hi / b;
    DoubleDouble r = two_prod(q1, b);
    const double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
    return two_sum(q1, q2);
}

}  // namespace dd
}  // namespace fracsys
