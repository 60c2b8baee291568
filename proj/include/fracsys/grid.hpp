#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

namespace fracsys {

enum class GridKind { uniform, graded };

/// Time axis 0 = t_0 < t_1 < ... < t_N = T, uniform or graded t_k = T(k/N)^r.
/// Immutable after construction; share freely across threads.
class Grid {
public:
    static std::shared_ptr<const Grid> make(double horizon, std::size_t intervals,
                                            double grading = 1.0);

    double horizon() const { return horizon_; }
    std::size_t intervals() const { return nodes_.size() - 1; }
    std::size_t size() const { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const { return nodes_; }
    GridKind kind() const { return kind_; }
    double grading() const { return grading_; }
    bool is_uniform() const { return kind_ == GridKind::uniform; }
    double spacing(std::size_t k) const { return nodes_[k + 1] - nodes_[k]; }

private:
    Grid(std::vector<double> nodes, double horizon, double grading, GridKind kind)
        : nodes_(std::move(nodes)), horizon_(horizon), grading_(grading), kind_(kind) {}

    std::vector<double> nodes_;
    double horizon_;
    double grading_;
    GridKind kind_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// t_k = T (k/N)^r; r = 1 gives the uniform grid with t_N pinned to T exactly.
GridPtr make_grid(double horizon, std::size_t intervals, double grading = 1.0);

/// Sampled path values on a grid, one length-dim vector per node,
/// stored node-major.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::size_t dim);  // zero-initialized

    static GridFunction constant(GridPtr grid, std::span<const double> value);
    static GridFunction constant(GridPtr grid, double value);  // dim 1

    /// Evaluates fill(t, out) at every node; throws EvalError on non-finite output.
    static GridFunction sample(
        GridPtr grid, std::size_t dim,
        const std::function<void(double, std::span<double>)>& fill);
    static GridFunction sample_scalar(GridPtr grid,
                                      const std::function<double(double)>& f);

    const GridPtr& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t nodes() const { return grid_->size(); }

    std::span<double> value(std::size_t node) {
        return {values_.data() + node * dim_, dim_};
    }
    std::span<const double> value(std::size_t node) const {
        return {values_.data() + node * dim_, dim_};
    }
    double at(std::size_t node, std::size_t component) const {
        return values_[node * dim_ + component];
    }
    double& at(std::size_t node, std::size_t component) {
        return values_[node * dim_ + component];
    }
    std::span<const double> raw() const { return values_; }
    std::span<double> raw() { return values_; }

    bool same_layout(const GridFunction& other) const;
    void require_same_layout(const GridFunction& other) const;  // throws ShapeError

    /// CSV: header `t,phi_1,...,phi_n`, one row per node, round-trip doubles.
    void write_csv(std::ostream& os) const;

private:
    GridPtr grid_;
    std::size_t dim_;
    std::vector<double> values_;
};

/// max over nodes of the Euclidean norm of a - b. Shapes must match.
double sup_norm_diff(const GridFunction& a, const GridFunction& b);

/// Composite-trapezoid L^p norm of the Euclidean node norms; p = inf gives
/// the max of sampled norms. p < 1 is a domain error.
double lp_norm(const GridFunction& g, double p);

}  // namespace fracsys
