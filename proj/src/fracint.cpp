#include "fracsys/fracint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsys/errors.hpp"
#include "fracsys/parallel.hpp"
#include "fracsys/specfun.hpp"
#include "fracsys/summation.hpp"

namespace fracsys {
namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0) || !std::isfinite(alpha))
        throw std::domain_error("fractional order must lie in (0, 1]");
}

// Splits the exact cell mass A = int u^{alpha-1} du over [d_lo, d_hi] between
// the cell endpoints at the kernel centroid theta = (B/A - d_lo)/h. Keeping
// (1-theta) + theta = 1 makes row sums telescope to t_i^alpha/alpha exactly.
struct CellSplit {
    double mass;
    double theta;
};

CellSplit cell_split(double alpha, double d_hi, double d_lo, double pa_hi, double pa_lo,
                     double h) {
    const double mass = (pa_hi - pa_lo) / alpha;
    if (!(mass > 0.0)) return {0.0, 0.5};
    const double b = (pa_hi * d_hi - pa_lo * d_lo) / (alpha + 1.0);
    double theta = (b / mass - d_lo) / h;
    theta = std::clamp(theta, 0.0, 1.0);
    return {mass, theta};
}

}  // namespace

WeightTable::WeightTable(double alpha, GridPtr grid, QuadratureRule rule)
    : alpha_(alpha), grid_(std::move(grid)), rule_(rule) {
    check_alpha(alpha);
    if (!grid_) throw std::domain_error("WeightTable: null grid");
    inv_gamma_ = std::exp(-log_gamma(alpha));

    if (grid_->is_uniform()) {
        const std::size_t n = grid_->intervals();
        const double h = grid_->horizon() / static_cast<double>(n);
        mass_.assign(n + 1, 0.0);
        left_.assign(n + 1, 0.0);
        right_.assign(n + 1, 0.0);
        double pa_lo = 0.0;
        double d_lo = 0.0;
        for (std::size_t m = 1; m <= n; ++m) {
            const double d_hi = static_cast<double>(m) * h;
            const double pa_hi = std::pow(d_hi, alpha_);
            const CellSplit cell = cell_split(alpha_, d_hi, d_lo, pa_hi, pa_lo, h);
            mass_[m] = cell.mass;
            left_[m] = cell.mass * (1.0 - cell.theta);
            right_[m] = cell.mass * cell.theta;
            pa_lo = pa_hi;
            d_lo = d_hi;
        }
    }
}

WeightTable build_weights(double alpha, GridPtr grid, QuadratureRule rule) {
    return WeightTable(alpha, std::move(grid), rule);
}

void WeightTable::row(std::size_t i, std::span<double> out) const {
    if (i >= size()) throw ShapeError("WeightTable::row: index out of range");
    if (out.size() < i + 1) throw ShapeError("WeightTable::row: buffer too small");
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(i + 1), 0.0);
    if (i == 0) return;

    const auto nodes = grid_->nodes();
    if (!mass_.empty()) {
        if (rule_ == QuadratureRule::rectangle) {
            for (std::size_t k = 0; k < i; ++k) out[k] = mass_[i - k] * inv_gamma_;
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                out[k] += left_[i - k];
                out[k + 1] += right_[i - k];
            }
            for (std::size_t k = 0; k <= i; ++k) out[k] *= inv_gamma_;
        }
        return;
    }

    const double t_i = nodes[i];
    double d_hi = t_i;
    double pa_hi = std::pow(d_hi, alpha_);
    for (std::size_t k = 0; k < i; ++k) {
        const double d_lo = t_i - nodes[k + 1];
        const double pa_lo = d_lo == 0.0 ? 0.0 : std::pow(d_lo, alpha_);
        const double h = nodes[k + 1] - nodes[k];
        const CellSplit cell = cell_split(alpha_, d_hi, d_lo, pa_hi, pa_lo, h);
        if (rule_ == QuadratureRule::rectangle) {
            out[k] += cell.mass;
        } else {
            out[k] += cell.mass * (1.0 - cell.theta);
            out[k + 1] += cell.mass * cell.theta;
        }
        d_hi = d_lo;
        pa_hi = pa_lo;
    }
    for (std::size_t k = 0; k <= i; ++k) out[k] *= inv_gamma_;
}

double WeightTable::weight(std::size_t i, std::size_t k) const {
    if (i >= size() || k >= size()) throw ShapeError("WeightTable::weight: out of range");
    if (k > i) return 0.0;
    std::vector<double> buf(i + 1);
    row(i, buf);
    return buf[k];
}

void WeightTable::accumulate_row(std::size_t i, const GridFunction& g,
                                 std::span<double> out) const {
    const std::size_t dim = g.dim();
    std::fill(out.begin(), out.end(), 0.0);
    if (i == 0) return;

    const auto nodes = grid_->nodes();
    const bool rectangle = rule_ == QuadratureRule::rectangle;
    for (std::size_t j = 0; j < dim; ++j) {
        KahanSum acc;
        if (!mass_.empty()) {
            if (rectangle) {
                for (std::size_t k = 0; k < i; ++k) acc.add(mass_[i - k] * g.at(k, j));
            } else {
                for (std::size_t k = 0; k < i; ++k) {
                    const std::size_t m = i - k;
                    acc.add(left_[m] * g.at(k, j) + right_[m] * g.at(k + 1, j));
                }
            }
        } else {
            const double t_i = nodes[i];
            double d_hi = t_i;
            double pa_hi = std::pow(d_hi, alpha_);
            for (std::size_t k = 0; k < i; ++k) {
                const double d_lo = t_i - nodes[k + 1];
                const double pa_lo = d_lo == 0.0 ? 0.0 : std::pow(d_lo, alpha_);
                const double h = nodes[k + 1] - nodes[k];
                const CellSplit cell = cell_split(alpha_, d_hi, d_lo, pa_hi, pa_lo, h);
                if (rectangle)
                    acc.add(cell.mass * g.at(k, j));
                else
                    acc.add(cell.mass * ((1.0 - cell.theta) * g.at(k, j) +
                                         cell.theta * g.at(k + 1, j)));
                d_hi = d_lo;
                pa_hi = pa_lo;
            }
        }
        out[j] = acc.value() * inv_gamma_;
    }
}

GridFunction WeightTable::apply(const GridFunction& g, int threads) const {
    if (g.grid() != grid_) {
        const bool same = g.grid()->size() == grid_->size() &&
                          std::equal(g.grid()->nodes().begin(), g.grid()->nodes().end(),
                                     grid_->nodes().begin());
        if (!same) throw ShapeError("WeightTable::apply: grid mismatch");
    }
    GridFunction out(grid_, g.dim());
    parallel_for_index(size(), threads, [&](std::size_t i) {
        accumulate_row(i, g, out.value(i));
    });
    return out;
}

GridFunction rl_integral(const WeightTable& table, const GridFunction& g, int threads) {
    return table.apply(g, threads);
}

CaputoResult caputo_l1(double alpha, const GridFunction& g, int threads) {
    check_alpha(alpha);
    const auto& grid = *g.grid();
    const std::size_t n = grid.intervals();
    const std::size_t dim = g.dim();
    GridFunction out(g.grid(), dim);

    if (alpha == 1.0) {
        for (std::size_t j = 0; j < dim; ++j)
            out.at(0, j) = (g.at(1, j) - g.at(0, j)) / grid.spacing(0);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                out.at(i, j) = (g.at(i, j) - g.at(i - 1, j)) / grid.spacing(i - 1);
        return {std::move(out), false};
    }

    const double inv_gamma = std::exp(-log_gamma(2.0 - alpha));
    const double ex = 1.0 - alpha;

    std::vector<double> pow_uniform;
    if (grid.is_uniform()) {
        const double h = grid.horizon() / static_cast<double>(n);
        pow_uniform.resize(n + 1);
        pow_uniform[0] = 0.0;
        for (std::size_t m = 1; m <= n; ++m)
            pow_uniform[m] = std::pow(static_cast<double>(m) * h, ex);
    }

    parallel_for_index(n, threads, [&](std::size_t step) {
        const std::size_t i = step + 1;
        const auto nodes = grid.nodes();
        for (std::size_t j = 0; j < dim; ++j) {
            KahanSum acc;
            if (!pow_uniform.empty()) {
                const double h = grid.spacing(0);
                for (std::size_t k = 0; k < i; ++k) {
                    const double slope = (g.at(k + 1, j) - g.at(k, j)) / h;
                    acc.add(slope * (pow_uniform[i - k] - pow_uniform[i - k - 1]));
                }
            } else {
                const double t_i = nodes[i];
                double p_hi = std::pow(t_i, ex);
                for (std::size_t k = 0; k < i; ++k) {
                    const double d_lo = t_i - nodes[k + 1];
                    const double p_lo = d_lo == 0.0 ? 0.0 : std::pow(d_lo, ex);
                    const double slope =
                        (g.at(k + 1, j) - g.at(k, j)) / (nodes[k + 1] - nodes[k]);
                    acc.add(slope * (p_hi - p_lo));
                    p_hi = p_lo;
                }
            }
            out.at(i, j) = acc.value() * inv_gamma;
        }
    });

    for (std::size_t j = 0; j < dim; ++j) out.at(0, j) = out.at(1, j);
    return {std::move(out), true};
}

double holder_envelope(double alpha, double p, double g_lp_norm, double t) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("holder_envelope: p must exceed 1");
    if (!(alpha > 1.0 / p))
        throw std::domain_error("holder_envelope: needs alpha > 1/p");
    if (!(t >= 0.0)) throw std::domain_error("holder_envelope: t must be nonnegative");
    const double c = std::pow((alpha * p - 1.0) / (p - 1.0), (p - 1.0) / p);
    return std::pow(t, alpha - 1.0 / p) * g_lp_norm / c;
}

}  // namespace fracsys
