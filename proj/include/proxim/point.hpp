#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "proxim/errors.hpp"
#include "proxim/norm.hpp"

namespace proxim {

/// A finite coordinate vector tagged with its ambient norm.
/// Models vectors in R^n and grid-discretized functions on [0,1]
/// (complex-valued grid functions store the real-part grid followed
/// by the imaginary-part grid).
struct Point {
    std::vector<double> coords;
    NormTag norm;

    std::size_t dim() const { return coords.size(); }

    friend bool operator==(const Point& a, const Point& b) {
        return a.norm == b.norm && a.coords == b.coords;
    }
};

/// Validating constructor: coordinates must be finite and nonempty.
inline Point make_point(std::vector<double> coords, NormTag norm) {
    if (coords.empty()) throw DimensionError("point needs at least one coordinate");
    for (double c : coords)
        if (!std::isfinite(c)) throw DomainError("point coordinates must be finite");
    return Point{std::move(coords), norm};
}

inline void require_compatible(const Point& x, const Point& y) {
    if (x.dim() != y.dim())
        throw DimensionError("points have different dimensions (" + std::to_string(x.dim()) +
                             " vs " + std::to_string(y.dim()) + ")");
    if (x.norm != y.norm) throw DimensionError("points carry different ambient norms");
}

/// The metric: ||x - y||_p. Symmetric; zero iff the coordinates coincide.
inline double distance(const Point& x, const Point& y) {
    require_compatible(x, y);
    const std::size_t n = x.dim();
    if (x.norm.is_sup()) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x.coords[i] - y.coords[i]));
        return m;
    }
    const double p = x.norm.p;
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(x.coords[i] - y.coords[i]);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x.coords[i] - y.coords[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    // General p: scale by the largest component difference to avoid overflow.
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x.coords[i] - y.coords[i]));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(x.coords[i] - y.coords[i]) / m, p);
    return m * std::pow(s, 1.0 / p);
}

}  // namespace proxim
