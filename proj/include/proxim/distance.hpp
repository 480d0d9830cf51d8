#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "proxim/errors.hpp"
#include "proxim/point.hpp"
#include "proxim/sampling.hpp"
#include "proxim/sets.hpp"

namespace proxim {

/// Distance value with the nearest point found and an exactness flag.
/// exact = true means a closed-form projection; false means iterative search
/// (golden-section / coordinate descent at absolute tolerance 1e-10).
struct DistanceResult {
    double value = 0.0;
    std::optional<Point> witness;
    bool exact = true;
};

namespace detail {

/// Golden-section minimizer for a convex function on [a, b].
/// Returns (argmin, min). Endpoints are evaluated as well, so boundary
/// minima are never missed.
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double a,
                                            double b, double tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double best_t = a, best_f = f(a);
    const double fb = f(b);
    if (fb < best_f) {
        best_t = b;
        best_f = fb;
    }
    double lo = a, hi = b;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm < best_f) {
        best_t = mid;
        best_f = fm;
    }
    return {best_t, best_f};
}

inline Point clamp_to_box(const Point& x, const std::vector<double>& lo,
                          const std::vector<double>& hi) {
    std::vector<double> c(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) c[i] = std::clamp(x.coords[i], lo[i], hi[i]);
    return Point{std::move(c), x.norm};
}

inline Point segment_point(const Segment& s, double t, NormTag norm) {
    std::vector<double> c(s.a.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = s.a.coords[i] + t * (s.b.coords[i] - s.a.coords[i]);
    return Point{std::move(c), norm};
}

}  // namespace detail

/// sigma(x, S) = inf over members of S. Box-like sets and clouds are exact
/// (per-coordinate clamp / member scan); segments use golden-section search on
/// the convex map t -> ||x - (a + t(b-a))||. The witness always attains the
/// reported value (the value is recomputed from it).
inline DistanceResult point_set_distance(const Point& x, const SetDescriptor& S) {
    require_compatible(S, x);
    DistanceResult r;
    if (S.is_box_like()) {
        auto [lo, hi] = box_bounds(S);
        Point w = detail::clamp_to_box(x, lo, hi);
        r.value = distance(x, w);
        r.witness = std::move(w);
        r.exact = true;
        return r;
    }
    if (const auto* cloud = std::get_if<FiniteCloud>(&S.shape)) {
        std::size_t best = 0;
        double best_d = distance(x, cloud->points[0]);
        for (std::size_t i = 1; i < cloud->points.size(); ++i) {
            const double d = distance(x, cloud->points[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        r.value = best_d;
        r.witness = cloud->points[best];
        r.exact = true;
        return r;
    }
    const auto& seg = std::get<Segment>(S.shape);
    auto [t, value] =
        detail::golden_min([&](double tt) { return distance(x, detail::segment_point(seg, tt, S.norm)); },
                           0.0, 1.0);
    Point w = detail::segment_point(seg, t, S.norm);
    r.value = distance(x, w);
    r.witness = std::move(w);
    r.exact = false;
    return r;
}

/// Membership test at the given tolerance.
inline bool contains(const SetDescriptor& S, const Point& x, double tol = 1e-9) {
    require_compatible(S, x);
    if (S.is_box_like()) {
        auto [lo, hi] = box_bounds(S);
        for (std::size_t i = 0; i < x.dim(); ++i)
            if (x.coords[i] < lo[i] - tol || x.coords[i] > hi[i] + tol) return false;
        return true;
    }
    return point_set_distance(x, S).value <= tol;
}

/// sigma(A, B) = inf{||u - v||: u in A, v in B}. Box-like pairs use the exact
/// componentwise gap; clouds minimize point_set_distance over members; pairs
/// involving a segment use nested golden-section over the segment parameter
/// (with an exact or searched inner distance) followed by alternating
/// coordinate-descent refinement. The witness is a point of B attaining the
/// reported value.
inline DistanceResult set_distance(const SetDescriptor& A, const SetDescriptor& B) {
    require_compatible(A, B);
    DistanceResult r;

    if (A.is_box_like() && B.is_box_like()) {
        auto [alo, ahi] = box_bounds(A);
        auto [blo, bhi] = box_bounds(B);
        const std::size_t n = alo.size();
        std::vector<double> wa(n), wb(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (blo[i] > ahi[i]) {
                wa[i] = ahi[i];
                wb[i] = blo[i];
            } else if (alo[i] > bhi[i]) {
                wa[i] = alo[i];
                wb[i] = bhi[i];
            } else {
                wa[i] = wb[i] = std::max(alo[i], blo[i]);  // overlapping coordinate
            }
        }
        Point pa{std::move(wa), A.norm}, pb{std::move(wb), B.norm};
        r.value = distance(pa, pb);
        r.witness = std::move(pb);
        r.exact = true;
        return r;
    }

    // A cloud on either side reduces to a member scan.
    if (const auto* cloud = std::get_if<FiniteCloud>(&B.shape)) {
        bool exact = true;
        std::optional<std::size_t> best;
        double best_d = 0.0;
        for (std::size_t i = 0; i < cloud->points.size(); ++i) {
            auto inner = point_set_distance(cloud->points[i], A);
            exact = exact && inner.exact;
            if (!best || inner.value < best_d) {
                best = i;
                best_d = inner.value;
            }
        }
        r.value = best_d;
        r.witness = cloud->points[*best];
        r.exact = exact;
        return r;
    }
    if (std::holds_alternative<FiniteCloud>(A.shape)) {
        const auto& cloud = std::get<FiniteCloud>(A.shape);
        bool exact = true;
        std::optional<DistanceResult> best;
        for (const auto& m : cloud.points) {
            auto inner = point_set_distance(m, B);
            exact = exact && inner.exact;
            if (!best || inner.value < best->value) best = std::move(inner);
        }
        best->exact = exact;
        return *best;
    }

    // At least one side is a segment. Search over its parameter; the inner
    // problem is an exact point-to-set distance or, for two segments, another
    // one-dimensional search (nested golden-section).
    const bool a_is_seg = std::holds_alternative<Segment>(A.shape);
    const SetDescriptor& outer_set = a_is_seg ? A : B;
    const SetDescriptor& inner_set = a_is_seg ? B : A;
    const auto& seg = std::get<Segment>(outer_set.shape);

    auto eval = [&](double t) {
        return point_set_distance(detail::segment_point(seg, t, outer_set.norm), inner_set).value;
    };
    auto [t_best, value] = detail::golden_min(eval, 0.0, 1.0);

    if (const auto* seg_b = std::get_if<Segment>(&inner_set.shape)) {
        // Two segments: refine (s, t) by alternating coordinate descent.
        double s = t_best;
        auto inner_at = [&](double ss) {
            Point p = detail::segment_point(seg, ss, outer_set.norm);
            return detail::golden_min(
                [&](double tt) { return distance(p, detail::segment_point(*seg_b, tt, inner_set.norm)); },
                0.0, 1.0);
        };
        auto [t, v] = inner_at(s);
        for (int sweep = 0; sweep < 200; ++sweep) {
            Point q = detail::segment_point(*seg_b, t, inner_set.norm);
            auto [s2, v_s] = detail::golden_min(
                [&](double ss) { return distance(q, detail::segment_point(seg, ss, outer_set.norm)); },
                0.0, 1.0);
            auto [t2, v_t] = inner_at(s2);
            s = s2;
            t = t2;
            if (v - v_t < 1e-10) {
                v = v_t;
                break;
            }
            v = v_t;
        }
        Point pa = detail::segment_point(seg, s, outer_set.norm);
        Point pb = detail::segment_point(*seg_b, t, inner_set.norm);
        r.value = distance(pa, pb);
        r.witness = a_is_seg ? std::move(pb) : std::move(pa);  // B-side point
        r.exact = false;
        return r;
    }

    // Segment against a box-like set: the inner distance is exact.
    Point on_seg = detail::segment_point(seg, t_best, outer_set.norm);
    auto inner = point_set_distance(on_seg, inner_set);
    r.value = inner.value;
    r.witness = a_is_seg ? std::move(*inner.witness) : std::move(on_seg);  // B-side point
    r.exact = false;
    return r;
}

/// Up to k points of S within 1e-8 of sigma(x, S), deduplicated at
/// resolution 1e-6. Exposes non-uniqueness of nearest points (for norms
/// whose projections are set-valued).
inline std::vector<Point> project_candidates(const Point& x, const SetDescriptor& S, int k) {
    if (k < 1) throw ConfigError("project_candidates requires k >= 1");
    require_compatible(S, x);
    auto base = point_set_distance(x, S);
    const double level = base.value + 1e-8;

    std::vector<Point> pool;
    pool.push_back(*base.witness);
    if (S.is_box_like()) {
        // Candidates live in the intersection of S with the level box
        // {y: |y_i - x_i| <= value} around x (exact for the sup norm,
        // a superset otherwise; the filter below keeps only true minimizers).
        auto [lo, hi] = box_bounds(S);
        std::vector<double> ilo(lo.size()), ihi(hi.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            ilo[i] = std::max(lo[i], x.coords[i] - base.value - 1e-9);
            ihi[i] = std::min(hi[i], x.coords[i] + base.value + 1e-9);
            if (ilo[i] > ihi[i]) ilo[i] = ihi[i] = std::clamp(x.coords[i], lo[i], hi[i]);
        }
        SetDescriptor inner{Box{std::move(ilo), std::move(ihi)}, S.norm};
        for (auto& p : boundary_points(inner, 64)) pool.push_back(std::move(p));
        for (auto& p : sample_set(inner, 256, 0)) pool.push_back(std::move(p));
    } else if (const auto* seg = std::get_if<Segment>(&S.shape)) {
        for (int i = 0; i <= 256; ++i)
            pool.push_back(detail::segment_point(*seg, i / 256.0, S.norm));
    } else {
        for (const auto& p : std::get<FiniteCloud>(S.shape).points) pool.push_back(p);
    }

    std::vector<Point> out;
    for (auto& cand : pool) {
        if (distance(x, cand) > level) continue;
        bool dup = false;
        for (const auto& kept : out) {
            double gap = 0.0;
            for (std::size_t i = 0; i < cand.dim(); ++i)
                gap = std::max(gap, std::abs(cand.coords[i] - kept.coords[i]));
            if (gap <= 1e-6) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        out.push_back(std::move(cand));
        if (out.size() == static_cast<std::size_t>(k)) break;
    }
    return out;
}

}  // namespace proxim
