#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracsys {

/// Differentiation orders {alpha_j} of a multi-order system, each in (0, 1].
class OrderVector {
public:
    explicit OrderVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
        if (alphas_.empty()) throw std::domain_error("OrderVector: empty order list");
        for (double a : alphas_)
            if (!(a > 0.0) || !(a <= 1.0) || !std::isfinite(a))
                throw std::domain_error("OrderVector: orders must lie in (0, 1]");
    }

    std::size_t size() const { return alphas_.size(); }
    double operator[](std::size_t j) const { return alphas_[j]; }
    auto begin() const { return alphas_.begin(); }
    auto end() const { return alphas_.end(); }
    const std::vector<double>& values() const { return alphas_; }

    double min_order() const {
        return *std::min_element(alphas_.begin(), alphas_.end());
    }

    /// max{1/alpha_j}: the exponent the theorem's hypothesis compares p against.
    double required_exponent() const { return 1.0 / min_order(); }

private:
    std::vector<double> alphas_;
};

}  // namespace fracsys
