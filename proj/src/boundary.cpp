#include "fracsys/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsys/csv.hpp"
#include "fracsys/grid.hpp"
#include "fracsys/parallel.hpp"
#include "fracsys/rhs.hpp"
#include "fracsys/specfun.hpp"
#include "fracsys/summation.hpp"

namespace fracsys {

void HLSpec::validate() const {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("HLSpec: p must exceed 1");
    if (!(lambda > 1.0 / p) || !(lambda <= 1.0))
        throw std::domain_error(
            "HLSpec: lambda must lie in (1/p, 1]; outside it the L^p membership "
            "or the divergence of J^{1/p} sigma fails");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("HLSpec: horizon must be positive");
    if (!(t0 > 0.0) || !(t0 <= horizon))
        throw std::domain_error("HLSpec: t0 must lie in (0, horizon]");
    if (!(shift >= 1.0) || !(shift - std::log(t0) >= 1.0))
        throw std::domain_error("HLSpec: shift must keep c - ln(t0 - s) >= 1 on [0, t0)");
}

std::function<double(double)> hl_sigma(const HLSpec& spec) {
    spec.validate();
    const double p = spec.p;
    const double lambda = spec.lambda;
    const double t0 = spec.t0;
    const double c = spec.shift;
    return [p, lambda, t0, c](double s) {
        if (s >= t0) return 0.0;
        const double w = t0 - s;
        return std::pow(w, -1.0 / p) * std::pow(c - std::log(w), -lambda);
    };
}

double hl_sigma_lp_norm(const HLSpec& spec) {
    spec.validate();
    const double lp = spec.lambda * spec.p;
    return std::pow(std::pow(spec.shift - std::log(spec.t0), 1.0 - lp) / (lp - 1.0),
                    1.0 / spec.p);
}

namespace {

// Mesh on [0, T] clustered quadratically at t0 from the left (where sigma
// and the transform blow up), uniform on (t0, T]. t0 is always a node.
std::vector<double> demo_mesh(const HLSpec& spec, std::size_t intervals) {
    const double t0 = spec.t0;
    const double T = spec.horizon;
    std::size_t m_left = intervals;
    std::size_t m_right = 0;
    if (t0 < T) {
        m_left = std::max<std::size_t>(
            8, static_cast<std::size_t>(std::lround(static_cast<double>(intervals) * t0 / T)));
        m_left = std::min(m_left, intervals - 1);
        m_right = intervals - m_left;
    }
    std::vector<double> nodes;
    nodes.reserve(intervals + 1);
    for (std::size_t k = 0; k < m_left; ++k) {
        const double u =
            static_cast<double>(m_left - k) / static_cast<double>(m_left);
        nodes.push_back(t0 * (1.0 - u * u));
    }
    nodes.push_back(t0);
    for (std::size_t k = 1; k <= m_right; ++k)
        nodes.push_back(t0 + (T - t0) * static_cast<double>(k) /
                                 static_cast<double>(m_right));
    nodes.front() = 0.0;
    nodes.back() = T;
    return nodes;
}

}  // namespace

std::vector<UnboundednessRow> unboundedness_demo(const HLSpec& spec,
                                                 std::span<const std::size_t> levels,
                                                 std::optional<double> order,
                                                 int threads) {
    spec.validate();
    for (std::size_t l = 1; l < levels.size(); ++l)
        if (levels[l] <= levels[l - 1])
            throw std::domain_error("unboundedness_demo: levels must increase");
    const double alpha = order.value_or(1.0 / spec.p);
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("unboundedness_demo: order must lie in (0, 1]");
    const auto sigma = hl_sigma(spec);
    const double inv_gamma = std::exp(-log_gamma(alpha));

    std::vector<UnboundednessRow> rows;
    rows.reserve(levels.size());
    for (std::size_t level : levels) {
        if (level < 16) throw std::domain_error("unboundedness_demo: level too coarse");
        const std::vector<double> nodes = demo_mesh(spec, level);
        const std::size_t cells = nodes.size() - 1;

        std::vector<double> sigma_mid(cells);
        for (std::size_t k = 0; k < cells; ++k)
            sigma_mid[k] = sigma(0.5 * (nodes[k] + nodes[k + 1]));

        // sup over nodes of J^alpha sigma, product integration with exact
        // kernel moments and midpoint samples of sigma.
        std::vector<double> transform(nodes.size(), 0.0);
        parallel_for_index(nodes.size() - 1, threads, [&](std::size_t row) {
            const std::size_t i = row + 1;
            const double t_i = nodes[i];
            KahanSum acc;
            double pa_hi = std::pow(t_i, alpha);
            for (std::size_t k = 0; k < i; ++k) {
                const double d_lo = t_i - nodes[k + 1];
                const double pa_lo = d_lo <= 0.0 ? 0.0 : std::pow(d_lo, alpha);
                acc.add((pa_hi - pa_lo) / alpha * sigma_mid[k]);
                pa_hi = pa_lo;
            }
            transform[i] = acc.value() * inv_gamma;
        });

        // |sigma|^p = w^{-1} (c - ln w)^{-lambda p} integrates in closed form;
        // the cell that touches the singularity uses that antiderivative,
        // every other cell a midpoint sample.
        const double lp = spec.lambda * spec.p;
        KahanSum norm_acc;
        for (std::size_t k = 0; k < cells; ++k) {
            const double w_hi = spec.t0 - nodes[k];
            if (w_hi <= 0.0) break;  // sigma vanishes beyond t0
            const double w_lo = spec.t0 - nodes[k + 1];
            if (w_lo <= 0.0) {
                norm_acc.add(std::pow(spec.shift - std::log(w_hi), 1.0 - lp) /
                             (lp - 1.0));
            } else {
                norm_acc.add((nodes[k + 1] - nodes[k]) * std::pow(sigma_mid[k], spec.p));
            }
        }

        rows.push_back({level, *std::max_element(transform.begin(), transform.end()),
                        std::pow(norm_acc.value(), 1.0 / spec.p)});
    }
    return rows;
}

void write_unboundedness_csv(std::span<const UnboundednessRow> rows, std::ostream& os) {
    os << "N,sup_J,sigma_lp_norm\n";
    for (const auto& r : rows) {
        os << r.intervals << ',';
        put_double(os, r.sup_j) << ',';
        put_double(os, r.sigma_lp) << '\n';
    }
}

NonuniquenessResult nonuniqueness_demo(std::size_t intervals) {
    if (intervals < 16) throw std::domain_error("nonuniqueness_demo: need N >= 16");

    const GridPtr grid = make_grid(1.0, intervals);
    const auto phi1_fn = [](double t) {
        return t <= 0.5 ? t * t : (t + 0.5) * (t + 0.5) / 4.0;
    };
    const GridFunction phi1 = GridFunction::sample_scalar(grid, phi1_fn);
    const GridFunction phi2 = GridFunction::sample_scalar(grid, [](double) { return 0.0; });
    const CaratheodoryRHS rhs = catalog("intro_nonuniqueness");

    const auto residual = [&](const GridFunction& phi) {
        const GridFunction f = nemytskii_eval(rhs, phi);
        double worst = 0.0;
        for (std::size_t i = 1; i < grid->size(); ++i) {
            const double t_prev = grid->node(i - 1);
            const double t_i = grid->node(i);
            // Drop the cell containing the RHS breakpoint (measure zero).
            if (t_prev < 0.5 && 0.5 <= t_i) continue;
            const double quotient = (phi.at(i, 0) - phi.at(i - 1, 0)) / (t_i - t_prev);
            worst = std::max(worst, std::abs(quotient - f.at(i, 0)));
        }
        return worst;
    };

    return {intervals, residual(phi1), residual(phi2), sup_norm_diff(phi1, phi2)};
}

void write_nonuniqueness_csv(std::span<const NonuniquenessResult> rows, std::ostream& os) {
    os << "N,res1,res2,separation\n";
    for (const auto& r : rows) {
        os << r.intervals << ',';
        put_double(os, r.residual_phi1) << ',';
        put_double(os, r.residual_phi2) << ',';
        put_double(os, r.separation) << '\n';
    }
}

}  // namespace fracsys
