#include "fracsys/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracsys/csv.hpp"
#include "fracsys/errors.hpp"
#include "fracsys/summation.hpp"

namespace fracsys {

std::shared_ptr<const Grid> Grid::make(double horizon, std::size_t intervals,
                                       double grading) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("Grid: horizon must be positive and finite");
    if (intervals < 1) throw std::domain_error("Grid: need at least one interval");
    if (!(grading >= 1.0) || !std::isfinite(grading))
        throw std::domain_error("Grid: grading exponent must be >= 1");

    const std::size_t n = intervals;
    std::vector<double> nodes(n + 1);
    nodes[0] = 0.0;
    if (grading == 1.0) {
        for (std::size_t k = 1; k < n; ++k)
            nodes[k] = static_cast<double>(k) * horizon / static_cast<double>(n);
    } else {
        for (std::size_t k = 1; k < n; ++k)
            nodes[k] = horizon * std::pow(static_cast<double>(k) / static_cast<double>(n),
                                          grading);
    }
    nodes[n] = horizon;

    for (std::size_t k = 0; k < n; ++k)
        if (!(nodes[k] < nodes[k + 1]))
            throw std::domain_error("Grid: grading collapses nodes at index " +
                                    std::to_string(k));

    const GridKind kind = grading == 1.0 ? GridKind::uniform : GridKind::graded;
    return std::shared_ptr<const Grid>(new Grid(std::move(nodes), horizon, grading, kind));
}

GridPtr make_grid(double horizon, std::size_t intervals, double grading) {
    return Grid::make(horizon, intervals, grading);
}

GridFunction::GridFunction(GridPtr grid, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), values_(grid_->size() * dim, 0.0) {
    if (dim_ == 0) throw std::domain_error("GridFunction: dimension must be positive");
}

GridFunction GridFunction::constant(GridPtr grid, std::span<const double> value) {
    GridFunction g(std::move(grid), value.size());
    for (std::size_t i = 0; i < g.nodes(); ++i) {
        auto row = g.value(i);
        for (std::size_t j = 0; j < value.size(); ++j) row[j] = value[j];
    }
    return g;
}

GridFunction GridFunction::constant(GridPtr grid, double value) {
    return constant(std::move(grid), std::span<const double>(&value, 1));
}

GridFunction GridFunction::sample(
    GridPtr grid, std::size_t dim,
    const std::function<void(double, std::span<double>)>& fill) {
    GridFunction g(std::move(grid), dim);
    for (std::size_t i = 0; i < g.nodes(); ++i) {
        auto row = g.value(i);
        fill(g.grid()->node(i), row);
        for (double v : row)
            if (!std::isfinite(v)) throw EvalError("non-finite sample", i);
    }
    return g;
}

GridFunction GridFunction::sample_scalar(GridPtr grid,
                                         const std::function<double(double)>& f) {
    return sample(std::move(grid), 1,
                  [&f](double t, std::span<double> out) { out[0] = f(t); });
}

bool GridFunction::same_layout(const GridFunction& other) const {
    if (dim_ != other.dim_) return false;
    if (grid_ == other.grid_) return true;
    if (grid_->size() != other.grid_->size()) return false;
    for (std::size_t i = 0; i < grid_->size(); ++i)
        if (grid_->node(i) != other.grid_->node(i)) return false;
    return true;
}

void GridFunction::require_same_layout(const GridFunction& other) const {
    if (!same_layout(other))
        throw ShapeError("grid functions disagree in grid or dimension");
}

void GridFunction::write_csv(std::ostream& os) const {
    os << 't';
    for (std::size_t j = 1; j <= dim_; ++j) os << ",phi_" << j;
    os << '\n';
    for (std::size_t i = 0; i < nodes(); ++i) {
        put_double(os, grid_->node(i));
        for (double v : value(i)) {
            os << ',';
            put_double(os, v);
        }
        os << '\n';
    }
}

namespace {

double euclidean_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

double euclidean(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

double sup_norm_diff(const GridFunction& a, const GridFunction& b) {
    a.require_same_layout(b);
    double best = 0.0;
    for (std::size_t i = 0; i < a.nodes(); ++i)
        best = std::max(best, euclidean_diff(a.value(i), b.value(i)));
    return best;
}

double lp_norm(const GridFunction& g, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    const auto& grid = *g.grid();
    if (std::isinf(p)) {
        double best = 0.0;
        for (std::size_t i = 0; i < g.nodes(); ++i)
            best = std::max(best, euclidean(g.value(i)));
        return best;
    }
    KahanSum acc;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double h = grid.spacing(k);
        const double fa = std::pow(euclidean(g.value(k)), p);
        const double fb = std::pow(euclidean(g.value(k + 1)), p);
        acc.add(0.5 * h * (fa + fb));
    }
    return std::pow(acc.value(), 1.0 / p);
}

}  // namespace fracsys
