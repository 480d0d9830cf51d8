#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "proxim/errors.hpp"
#include "proxim/norm.hpp"
#include "proxim/point.hpp"

namespace proxim {

/// Closed real interval [lo, hi].
struct Interval {
    double lo, hi;
};

/// Axis-aligned box: componentwise [lo_i, hi_i].
struct Box {
    std::vector<double> lo, hi;
};

/// Line segment between two points of the same space.
struct Segment {
    Point a, b;
};

/// Nonempty finite point set.
struct FiniteCloud {
    std::vector<Point> points;
};

/// Per-coordinate box of grid-discretized functions on [0,1].
/// Geometrically identical to Box; the tag records that coordinates
/// are samples of a function on a uniform grid.
struct GridBox {
    std::vector<double> lo, hi;
};

/// A closed set together with its ambient norm.
struct SetDescriptor {
    std::variant<Interval, Box, Segment, FiniteCloud, GridBox> shape;
    NormTag norm;

    std::size_t dim() const {
        return std::visit(
            [](const auto& s) -> std::size_t {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Interval>) return 1;
                else if constexpr (std::is_same_v<T, Box>) return s.lo.size();
                else if constexpr (std::is_same_v<T, Segment>) return s.a.dim();
                else if constexpr (std::is_same_v<T, FiniteCloud>) return s.points.front().dim();
                else return s.lo.size();  // GridBox
            },
            shape);
    }

    bool is_box_like() const {
        return std::holds_alternative<Interval>(shape) || std::holds_alternative<Box>(shape) ||
               std::holds_alternative<GridBox>(shape);
    }
};

namespace detail {
inline void check_bounds(const std::vector<double>& lo, const std::vector<double>& hi) {
    if (lo.empty() || lo.size() != hi.size())
        throw DimensionError("box bounds must be nonempty and the same length");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw DomainError("box bounds must be finite");
        if (lo[i] > hi[i])
            throw DomainError("box bounds require lo <= hi in every coordinate (coordinate " +
                              std::to_string(i) + ")");
    }
}
}  // namespace detail

inline SetDescriptor make_interval(double lo, double hi, NormTag norm) {
    detail::check_bounds({lo}, {hi});
    return SetDescriptor{Interval{lo, hi}, norm};
}

inline SetDescriptor make_box(std::vector<double> lo, std::vector<double> hi, NormTag norm) {
    detail::check_bounds(lo, hi);
    return SetDescriptor{Box{std::move(lo), std::move(hi)}, norm};
}

inline SetDescriptor make_grid_box(std::vector<double> lo, std::vector<double> hi, NormTag norm) {
    detail::check_bounds(lo, hi);
    return SetDescriptor{GridBox{std::move(lo), std::move(hi)}, norm};
}

inline SetDescriptor make_segment(Point a, Point b) {
    require_compatible(a, b);
    NormTag norm = a.norm;
    return SetDescriptor{Segment{std::move(a), std::move(b)}, norm};
}

inline SetDescriptor make_cloud(std::vector<Point> points) {
    if (points.empty()) throw DomainError("finite cloud must be nonempty");
    for (std::size_t i = 1; i < points.size(); ++i) require_compatible(points[0], points[i]);
    NormTag norm = points.front().norm;
    return SetDescriptor{FiniteCloud{std::move(points)}, norm};
}

inline void require_compatible(const SetDescriptor& S, const Point& x) {
    if (S.dim() != x.dim())
        throw DimensionError("set and point have different dimensions (" +
                             std::to_string(S.dim()) + " vs " + std::to_string(x.dim()) + ")");
    if (S.norm != x.norm) throw DimensionError("set and point carry different ambient norms");
}

inline void require_compatible(const SetDescriptor& A, const SetDescriptor& B) {
    if (A.dim() != B.dim())
        throw DimensionError("sets have different dimensions (" + std::to_string(A.dim()) +
                             " vs " + std::to_string(B.dim()) + ")");
    if (A.norm != B.norm) throw DimensionError("sets carry different ambient norms");
}

/// Bounds of a box-like descriptor as (lo, hi) vectors.
inline std::pair<std::vector<double>, std::vector<double>> box_bounds(const SetDescriptor& S) {
    if (const auto* iv = std::get_if<Interval>(&S.shape))
        return {{iv->lo}, {iv->hi}};
    if (const auto* bx = std::get_if<Box>(&S.shape)) return {bx->lo, bx->hi};
    if (const auto* gb = std::get_if<GridBox>(&S.shape)) return {gb->lo, gb->hi};
    throw DomainError("descriptor is not box-like");
}

/// Dimension of the natural parameterization: [0,1]^param_dim covers the set.
inline std::size_t param_dim(const SetDescriptor& S) {
    return std::visit(
        [](const auto& s) -> std::size_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) return 1;
            else if constexpr (std::is_same_v<T, Box>) return s.lo.size();
            else if constexpr (std::is_same_v<T, Segment>) return 1;
            else if constexpr (std::is_same_v<T, FiniteCloud>) return 1;
            else return s.lo.size();  // GridBox
        },
        S.shape);
}

/// Map a parameter vector in [0,1]^param_dim to a member of S.
inline Point param_to_point(const SetDescriptor& S, const std::vector<double>& t) {
    if (t.size() != param_dim(S)) throw DimensionError("parameter vector has wrong length");
    return std::visit(
        [&](const auto& s) -> Point {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return Point{{s.lo + t[0] * (s.hi - s.lo)}, S.norm};
            } else if constexpr (std::is_same_v<T, Box> || std::is_same_v<T, GridBox>) {
                std::vector<double> c(s.lo.size());
                for (std::size_t i = 0; i < c.size(); ++i)
                    c[i] = s.lo[i] + t[i] * (s.hi[i] - s.lo[i]);
                return Point{std::move(c), S.norm};
            } else if constexpr (std::is_same_v<T, Segment>) {
                std::vector<double> c(s.a.dim());
                for (std::size_t i = 0; i < c.size(); ++i)
                    c[i] = s.a.coords[i] + t[0] * (s.b.coords[i] - s.a.coords[i]);
                return Point{std::move(c), S.norm};
            } else {  // FiniteCloud
                const auto n = s.points.size();
                auto idx = static_cast<std::size_t>(t[0] * static_cast<double>(n));
                if (idx >= n) idx = n - 1;
                return s.points[idx];
            }
        },
        S.shape);
}

/// Deterministic extreme members: box corners, segment endpoints, cloud members.
/// At most cap points; for boxes with more than cap corners a fixed subset is
/// taken (all-lo, all-hi, then single-axis flips).
inline std::vector<Point> boundary_points(const SetDescriptor& S, std::size_t cap = 64) {
    std::vector<Point> out;
    if (cap == 0) return out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                out.push_back(Point{{s.lo}, S.norm});
                if (s.hi != s.lo && out.size() < cap) out.push_back(Point{{s.hi}, S.norm});
            } else if constexpr (std::is_same_v<T, Box> || std::is_same_v<T, GridBox>) {
                const std::size_t n = s.lo.size();
                if (n < 20 && (std::size_t{1} << n) <= cap) {
                    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                        std::vector<double> c(n);
                        for (std::size_t i = 0; i < n; ++i)
                            c[i] = (mask >> i) & 1 ? s.hi[i] : s.lo[i];
                        out.push_back(Point{std::move(c), S.norm});
                    }
                } else {
                    out.push_back(Point{s.lo, S.norm});
                    if (out.size() < cap) out.push_back(Point{s.hi, S.norm});
                    for (std::size_t i = 0; i < n && out.size() < cap; ++i) {
                        std::vector<double> c = s.lo;
                        c[i] = s.hi[i];
                        out.push_back(Point{std::move(c), S.norm});
                    }
                }
            } else if constexpr (std::is_same_v<T, Segment>) {
                out.push_back(s.a);
                if (out.size() < cap && !(s.a == s.b)) out.push_back(s.b);
            } else {  // FiniteCloud
                for (const auto& p : s.points) {
                    if (out.size() >= cap) break;
                    out.push_back(p);
                }
            }
        },
        S.shape);
    return out;
}

}  // namespace proxim
