#pragma once

#include <cmath>
#include <limits>

#include "proxim/errors.hpp"

namespace proxim {

/// Tag for an l_p norm on coordinate vectors, p in [1, inf].
/// p = infinity selects the supremum norm.
struct NormTag {
    double p = 2.0;

    static NormTag lp(double p) {
        if (!(p >= 1.0))  // NaN and p < 1 both fail here
            throw ConfigError("norm exponent must satisfy p >= 1 (or be infinite)");
        return NormTag{p};
    }
    static NormTag l1() { return NormTag{1.0}; }
    static NormTag euclidean() { return NormTag{2.0}; }
    static NormTag sup() { return NormTag{std::numeric_limits<double>::infinity()}; }

    bool is_sup() const { return std::isinf(p); }

    friend bool operator==(const NormTag& a, const NormTag& b) { return a.p == b.p; }
    friend bool operator!=(const NormTag& a, const NormTag& b) { return !(a == b); }
};

}  // namespace proxim
