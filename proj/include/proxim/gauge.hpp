#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "proxim/errors.hpp"

namespace proxim {

/// psi(s) = (1 - beta) s, beta in [0, 1). The gauge of a plain (almost)
/// cyclic contraction with contraction factor beta.
struct LinearGauge {
    double beta;
};

/// psi(s) = s + 1.
struct AffineShiftGauge {};

/// psi(s) = s^2 / (1 + s).
struct RationalGauge {};

/// Piecewise-linear gauge through strictly increasing sample knots,
/// extended past the last knot with the final slope.
struct TabulatedGauge {
    std::vector<double> s, psi;
};

/// A strictly increasing continuous map psi on [0, inf).
struct Gauge {
    std::variant<LinearGauge, AffineShiftGauge, RationalGauge, TabulatedGauge> variant;
};

inline Gauge make_linear_gauge(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("linear gauge requires beta in [0, 1)");
    return Gauge{LinearGauge{beta}};
}

inline Gauge make_affine_shift_gauge() { return Gauge{AffineShiftGauge{}}; }

inline Gauge make_rational_gauge() { return Gauge{RationalGauge{}}; }

inline Gauge make_tabulated_gauge(std::vector<double> s, std::vector<double> psi) {
    if (s.size() != psi.size() || s.size() < 2)
        throw ConfigError("tabulated gauge needs at least two matching knots");
    if (s.front() != 0.0) throw ConfigError("tabulated gauge must start its knots at s = 0");
    if (psi.front() < 0.0) throw ConfigError("tabulated gauge requires psi(0) >= 0");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1]) || !(psi[i] > psi[i - 1]))
            throw ConfigError("tabulated gauge knots must be strictly increasing in s and psi");
    return Gauge{TabulatedGauge{std::move(s), std::move(psi)}};
}

/// Value of psi and of (I - psi) at s. The difference is computed analytically
/// per variant, so exact identities (AffineShift: s - psi(s) = -1) hold to the
/// last bit. (I - psi)(s) may be negative.
struct GaugeEval {
    double psi;
    double i_minus_psi;
};

inline GaugeEval gauge_eval(const Gauge& g, double s) {
    if (!(s >= 0.0)) throw DomainError("gauge argument must be nonnegative");
    return std::visit(
        [&](const auto& v) -> GaugeEval {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearGauge>) {
                return {(1.0 - v.beta) * s, v.beta * s};
            } else if constexpr (std::is_same_v<T, AffineShiftGauge>) {
                return {s + 1.0, -1.0};
            } else if constexpr (std::is_same_v<T, RationalGauge>) {
                return {s * s / (1.0 + s), s / (1.0 + s)};
            } else {  // TabulatedGauge
                const auto& knots_s = v.s;
                const auto& knots_p = v.psi;
                std::size_t hi = 1;
                while (hi + 1 < knots_s.size() && s > knots_s[hi]) ++hi;
                const double slope =
                    (knots_p[hi] - knots_p[hi - 1]) / (knots_s[hi] - knots_s[hi - 1]);
                const double psi = knots_p[hi - 1] + slope * (s - knots_s[hi - 1]);
                return {psi, s - psi};
            }
        },
        g.variant);
}

}  // namespace proxim
