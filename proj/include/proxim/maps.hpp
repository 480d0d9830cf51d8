#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/point.hpp"
#include "proxim/sets.hpp"

namespace proxim {

/// Branch sending every point to a fixed value.
struct ConstantRule {
    Point value;
};

/// Branch x -> M x + c.
struct AffineRule {
    std::vector<std::vector<double>> matrix;
    std::vector<double> offset;
};

/// Per-coordinate closed form x_i -> a * x_i + b. The instance-file catalog
/// entries (affine, scale, neg, const) all normalize to this form.
struct ComponentExpr {
    double a = 1.0;
    double b = 0.0;
};

struct ComponentwiseRule {
    std::vector<ComponentExpr> exprs;
};

/// Built-in coupled map that has no componentwise closed form.
/// Known names: "function-space-forward", "function-space-backward"
/// (the two branches on grid functions f = f1 + i f2, stored as the
/// real-part grid followed by the imaginary-part grid):
///   forward:  f -> f2 + i * f1 / (1 + max|f1|)
///   backward: f -> f2 / (1 + max|f2|) + i * f1
struct NamedRule {
    std::string name;
};

struct BranchRule {
    std::variant<ConstantRule, AffineRule, ComponentwiseRule, NamedRule> rule;
};

/// Executable description of a cyclic map T with T(G) in H and T(H) in G.
struct CyclicMapSpec {
    BranchRule forward;   // applied to points of G
    BranchRule backward;  // applied to points of H
    SetDescriptor domain_g;
    SetDescriptor domain_h;
};

namespace detail {

inline void sup_couple(const std::vector<double>& half_in, std::vector<double>& half_out) {
    double m = 0.0;
    for (double c : half_in) m = std::max(m, std::abs(c));
    const double scale = 1.0 / (1.0 + m);
    half_out.resize(half_in.size());
    for (std::size_t i = 0; i < half_in.size(); ++i) half_out[i] = scale * half_in[i];
}

}  // namespace detail

/// Apply a branch rule directly, without any domain membership checks.
inline Point apply_branch(const BranchRule& branch, const Point& x) {
    return std::visit(
        [&](const auto& r) -> Point {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ConstantRule>) {
                return r.value;
            } else if constexpr (std::is_same_v<T, AffineRule>) {
                if (r.matrix.size() != x.dim())
                    throw DimensionError("affine rule matrix does not match point dimension");
                std::vector<double> out(r.matrix.size());
                for (std::size_t i = 0; i < out.size(); ++i) {
                    if (r.matrix[i].size() != x.dim())
                        throw DimensionError("affine rule matrix row has wrong length");
                    double s = r.offset[i];
                    for (std::size_t j = 0; j < x.dim(); ++j) s += r.matrix[i][j] * x.coords[j];
                    out[i] = s;
                }
                return Point{std::move(out), x.norm};
            } else if constexpr (std::is_same_v<T, ComponentwiseRule>) {
                if (r.exprs.size() != x.dim())
                    throw DimensionError("componentwise rule does not match point dimension");
                std::vector<double> out(x.dim());
                for (std::size_t i = 0; i < x.dim(); ++i)
                    out[i] = r.exprs[i].a * x.coords[i] + r.exprs[i].b;
                return Point{std::move(out), x.norm};
            } else {  // NamedRule
                if (x.dim() % 2 != 0)
                    throw DimensionError("grid-function maps need an even coordinate count");
                const std::size_t n = x.dim() / 2;
                std::vector<double> f1(x.coords.begin(), x.coords.begin() + n);
                std::vector<double> f2(x.coords.begin() + n, x.coords.end());
                std::vector<double> out(x.dim());
                std::vector<double> scaled;
                if (r.name == "function-space-forward") {
                    // f2 + i * f1 / (1 + max|f1|)
                    detail::sup_couple(f1, scaled);
                    for (std::size_t i = 0; i < n; ++i) out[i] = f2[i];
                    for (std::size_t i = 0; i < n; ++i) out[n + i] = scaled[i];
                } else if (r.name == "function-space-backward") {
                    // f2 / (1 + max|f2|) + i * f1
                    detail::sup_couple(f2, scaled);
                    for (std::size_t i = 0; i < n; ++i) out[i] = scaled[i];
                    for (std::size_t i = 0; i < n; ++i) out[n + i] = f1[i];
                } else {
                    throw ConfigError("unknown named map rule: " + r.name);
                }
                return Point{std::move(out), x.norm};
            }
        },
        branch.rule);
}

namespace detail {

inline void check_branch(const BranchRule& branch, std::size_t dim) {
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ConstantRule>) {
                if (r.value.dim() != dim)
                    throw DimensionError("constant rule value does not match domain dimension");
            } else if constexpr (std::is_same_v<T, AffineRule>) {
                if (r.matrix.size() != dim || r.offset.size() != dim)
                    throw DimensionError("affine rule shape does not match domain dimension");
                for (const auto& row : r.matrix)
                    if (row.size() != dim)
                        throw DimensionError("affine rule matrix row has wrong length");
            } else if constexpr (std::is_same_v<T, ComponentwiseRule>) {
                if (r.exprs.size() != dim)
                    throw DimensionError("componentwise rule does not match domain dimension");
            } else {  // NamedRule
                if (r.name != "function-space-forward" && r.name != "function-space-backward")
                    throw ConfigError("unknown named map rule: " + r.name);
                if (dim % 2 != 0)
                    throw DimensionError("grid-function maps need an even coordinate count");
            }
        },
        branch.rule);
}

}  // namespace detail

/// Validating constructor for a cyclic map specification.
inline CyclicMapSpec make_cyclic_map(BranchRule forward, BranchRule backward, SetDescriptor G,
                                     SetDescriptor H) {
    require_compatible(G, H);
    detail::check_branch(forward, G.dim());
    detail::check_branch(backward, H.dim());
    return CyclicMapSpec{std::move(forward), std::move(backward), std::move(G), std::move(H)};
}

/// Image of x under the branch matching its domain (G takes precedence when
/// the domains overlap). Throws DomainError when x lies in neither set and
/// CyclicityError when the image escapes the opposite set (tolerance 1e-9).
inline Point apply(const CyclicMapSpec& T, const Point& x) {
    constexpr double tol = 1e-9;
    if (contains(T.domain_g, x, tol)) {
        Point image = apply_branch(T.forward, x);
        if (!contains(T.domain_h, image, tol))
            throw CyclicityError("forward image escapes H: the map is not cyclic on these sets");
        return image;
    }
    if (contains(T.domain_h, x, tol)) {
        Point image = apply_branch(T.backward, x);
        if (!contains(T.domain_g, image, tol))
            throw CyclicityError("backward image escapes G: the map is not cyclic on these sets");
        return image;
    }
    throw DomainError("point lies in neither G nor H (tolerance 1e-9)");
}

}  // namespace proxim
