#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracsys/grid.hpp"

namespace fracsys {

/// Density model for product integration against the kernel (t-s)^{alpha-1}:
/// rectangle uses the left sample on each cell, trapezoid the linear
/// interpolant. Kernel moments are always exact.
enum class QuadratureRule { rectangle, trapezoid };

/// Causal quadrature weights w[i][k] with (J^alpha g)(t_i) ~ sum_k w[i][k] g(t_k).
/// Rows are generated on demand (O(N) memory); uniform grids precompute the
/// per-distance cell masses once, so applying the table does no pow() calls.
class WeightTable {
public:
    WeightTable(double alpha, GridPtr grid, QuadratureRule rule);

    double alpha() const { return alpha_; }
    QuadratureRule rule() const { return rule_; }
    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return grid_->size(); }

    /// Fills out[0..i] with row i; out must have at least i+1 entries.
    /// Row 0 is empty (the integral over [0,0]).
    void row(std::size_t i, std::span<double> out) const;

    /// Single weight; 0 for k > i. O(row) unless you need just a few.
    double weight(std::size_t i, std::size_t k) const;

    /// Componentwise causal convolution. Node 0 of the output is zero.
    /// Rows may be computed in parallel; per-row summation order is fixed,
    /// so any thread count yields identical bits.
    GridFunction apply(const GridFunction& g, int threads = 1) const;

private:
    void accumulate_row(std::size_t i, const GridFunction& g,
                        std::span<double> out) const;

    double alpha_;
    GridPtr grid_;
    QuadratureRule rule_;
    double inv_gamma_;  // 1/Gamma(alpha)
    // Uniform-grid tables indexed by distance m = i - k (trapezoid splits the
    // cell mass between its endpoints at the kernel centroid).
    std::vector<double> mass_;
    std::vector<double> left_;
    std::vector<double> right_;

    friend GridFunction rl_integral(const WeightTable&, const GridFunction&, int);
};

WeightTable build_weights(double alpha, GridPtr grid, QuadratureRule rule);

/// Riemann-Liouville integral J^alpha g on the table's grid.
GridFunction rl_integral(const WeightTable& table, const GridFunction& g,
                         int threads = 1);

/// L1 product-integration Caputo derivative. Node 0 is copied from node 1
/// for alpha < 1 (the derivative is only defined a.e.); alpha = 1 returns
/// difference quotients (forward at node 0, backward elsewhere).
struct CaputoResult {
    GridFunction values;
    bool node0_extrapolated;
};

CaputoResult caputo_l1(double alpha, const GridFunction& g, int threads = 1);

/// Hoelder envelope t^{alpha - 1/p} * g_lp_norm / c with
/// c = [(alpha p - 1)/(p - 1)]^{(p-1)/p}; requires p > 1 and alpha > 1/p.
double holder_envelope(double alpha, double p, double g_lp_norm, double t);

}  // namespace fracsys
