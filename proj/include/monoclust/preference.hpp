#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace monoclust {

namespace detail {
inline void check_same_length(std::span<const double> x,
                              std::span<const double> y,
                              std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
}
}  // namespace detail

// Cumulative weighted advantage of x over y: sums w_d * (x_d - y_d) over
// the dimensions where x strictly exceeds y. Asymmetric; always >= 0.
// All features are assumed maximization-oriented (negate minimization
// features at ingestion).
inline double preference(std::span<const double> x, std::span<const double> y,
                         std::span<const double> w) {
    detail::check_same_length(x, y, w);
    double r = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] > y[d]) r += w[d] * (x[d] - y[d]);
    }
    return r;
}

// Sum of w_d * |x_d - y_d|. Decomposes exactly as
// preference(x,y,w) + preference(y,x,w).
inline double weighted_l1(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w) {
    detail::check_same_length(x, y, w);
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        s += w[d] * std::abs(x[d] - y[d]);
    }
    return s;
}

// |preference(x,y,w) - preference(y,x,w)|, which collapses to the absolute
// difference of weighted coordinate sums. Computed in the preference form
// so it stays bit-for-bit consistent with the decomposition.
inline double mono_distance(std::span<const double> x,
                            std::span<const double> y,
                            std::span<const double> w) {
    detail::check_same_length(x, y, w);
    double forward = 0.0;
    double backward = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] > y[d]) {
            forward += w[d] * (x[d] - y[d]);
        } else if (y[d] > x[d]) {
            backward += w[d] * (y[d] - x[d]);
        }
    }
    return std::abs(forward - backward);
}

// Componentwise x_d >= y_d for every dimension (weak dominance). Reflexive.
inline bool dominates(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] < y[d]) return false;
    }
    return true;
}

// Weighted coordinate sum s(x); mono_distance(x,y,w) == |s(x) - s(y)|.
inline double projection(std::span<const double> x,
                         std::span<const double> w) {
    if (x.size() != w.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) s += w[d] * x[d];
    return s;
}

}  // namespace monoclust
