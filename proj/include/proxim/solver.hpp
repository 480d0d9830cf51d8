#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/maps.hpp"

namespace proxim {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr long kDefaultMaxIter = 100000;

enum class StopReason { Converged, MaxIterations, Diverged };

inline std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::Converged: return "Converged";
        case StopReason::MaxIterations: return "MaxIterations";
        case StopReason::Diverged: return "Diverged";
    }
    return "?";
}

/// Picard orbit u_0..u_N with the convergence diagnostics:
///   d_n = sigma(u_n, u_{n+1})          (full step sequence)
///   e_m = sigma(u_{2m+1}, G)           (approach level of the odd iterates)
/// Iterates alternate between G and H; for maps satisfying the contraction
/// hypotheses the even-indexed d values and the e values are nonincreasing.
struct IterationTrace {
    std::vector<Point> iterates;
    std::vector<double> d;
    std::vector<double> e;
    StopReason stop_reason = StopReason::MaxIterations;
};

/// Converged solve outcome. residual = |sigma(u*, Tu*) - sigma(Tu*, G)| for
/// the best-approximation mode and sigma(u*, Tu*) for the fixed-point mode;
/// gap_to_infimum = sigma(u*, Tu*) - sigma(G, H).
struct SolveResult {
    Point u_star;
    Point companion;  // T(u_star)
    double residual = 0.0;
    double gap_to_infimum = 0.0;
    long iterations = 0;
    IterationTrace trace;
};

/// Raw Picard iteration: apply T max_iter times recording d and e. No
/// stopping logic beyond the cap (stop_reason is always MaxIterations).
inline IterationTrace iterate(const CyclicMapSpec& T, const Point& u0, long max_iter) {
    if (max_iter < 1) throw ConfigError("iterate needs max_iter >= 1");
    if (!contains(T.domain_g, u0, 1e-9)) throw DomainError("start point must lie in G");
    IterationTrace trace;
    trace.iterates.reserve(static_cast<std::size_t>(max_iter) + 1);
    trace.iterates.push_back(u0);
    for (long n = 0; n < max_iter; ++n) {
        Point next = apply(T, trace.iterates.back());
        trace.d.push_back(distance(trace.iterates.back(), next));
        trace.iterates.push_back(std::move(next));
        if ((n + 1) % 2 == 1)  // u_{2m+1} just produced
            trace.e.push_back(point_set_distance(trace.iterates.back(), T.domain_g).value);
    }
    trace.stop_reason = StopReason::MaxIterations;
    return trace;
}

namespace detail {

inline SolveResult finish_solve(const CyclicMapSpec& T, IterationTrace trace, Point u_star,
                                long iterations, bool fixed_point_mode) {
    SolveResult r;
    r.companion = apply(T, u_star);
    const double step = distance(u_star, r.companion);
    if (fixed_point_mode) {
        r.residual = step;
    } else {
        r.residual = std::abs(step - point_set_distance(r.companion, T.domain_g).value);
    }
    r.gap_to_infimum = step - set_distance(T.domain_g, T.domain_h).value;
    r.iterations = iterations;
    r.u_star = std::move(u_star);
    r.trace = std::move(trace);
    return r;
}

}  // namespace detail

/// Iterate u_{n+1} = T u_n from u0 in G until the interlaced-gap criterion
/// and the even-subsequence Cauchy check both pass at tol:
///   |d_{2n} - e_n| <= tol, |d_{2n+1} - e_n| <= tol, sigma(u_{2n+2}, u_{2n}) <= tol.
/// u_star is the last even iterate. A rise of the even-indexed d by more than
/// 1e-6 contradicts the contraction hypotheses and stops the run as Diverged.
inline SolveResult solve_best_approximation(const CyclicMapSpec& T, const Point& u0,
                                            double tol = kDefaultTol,
                                            long max_iter = kDefaultMaxIter) {
    if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
    if (max_iter < 1) throw ConfigError("solver needs max_iter >= 1");
    if (!contains(T.domain_g, u0, 1e-9)) throw DomainError("start point must lie in G");

    IterationTrace trace;
    trace.iterates.push_back(u0);
    for (long k = 0; k < max_iter; ++k) {
        Point next = apply(T, trace.iterates.back());
        trace.d.push_back(distance(trace.iterates.back(), next));
        trace.iterates.push_back(std::move(next));

        if (k % 2 == 0) {
            // u_{2m+1} produced: record e_m, then check the even-d monotonicity
            // (d_{2m} against d_{2m-2}).
            trace.e.push_back(point_set_distance(trace.iterates.back(), T.domain_g).value);
            if (k >= 2 && trace.d[k] > trace.d[k - 2] + 1e-6) {
                trace.stop_reason = StopReason::Diverged;
                Point u_even = trace.iterates[k];  // last even iterate
                return detail::finish_solve(T, std::move(trace), std::move(u_even), k + 1, false);
            }
        } else {
            // u_{2n+2} produced: full convergence test.
            const long n = (k - 1) / 2;
            const double en = trace.e[n];
            const double even_gap =
                distance(trace.iterates[k + 1], trace.iterates[k - 1]);
            if (std::abs(trace.d[2 * n] - en) <= tol && std::abs(trace.d[2 * n + 1] - en) <= tol &&
                even_gap <= tol) {
                trace.stop_reason = StopReason::Converged;
                Point u_even = trace.iterates.back();
                return detail::finish_solve(T, std::move(trace), std::move(u_even), k + 1, false);
            }
        }
    }
    trace.stop_reason = StopReason::MaxIterations;
    const std::size_t last_even = (trace.iterates.size() - 1) % 2 == 0
                                      ? trace.iterates.size() - 1
                                      : trace.iterates.size() - 2;
    Point u_even = trace.iterates[last_even];
    return detail::finish_solve(T, std::move(trace), std::move(u_even), max_iter, false);
}

/// Iterate the full sequence from u0 in the intersection of G and H until
/// sigma(u_n, u_{n+1}) <= tol. residual = sigma(u*, Tu*).
inline SolveResult solve_fixed_point(const CyclicMapSpec& T, const Point& u0,
                                     double tol = kDefaultTol, long max_iter = kDefaultMaxIter) {
    if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
    if (max_iter < 1) throw ConfigError("solver needs max_iter >= 1");
    if (!contains(T.domain_g, u0, 1e-9) || !contains(T.domain_h, u0, 1e-9))
        throw DomainError("fixed-point mode needs a start in both G and H");

    IterationTrace trace;
    trace.iterates.push_back(u0);
    for (long k = 0; k < max_iter; ++k) {
        Point next = apply(T, trace.iterates.back());
        trace.d.push_back(distance(trace.iterates.back(), next));
        trace.iterates.push_back(std::move(next));
        if ((k + 1) % 2 == 1)
            trace.e.push_back(point_set_distance(trace.iterates.back(), T.domain_g).value);

        if (k >= 1 && trace.d[k] > trace.d[k - 1] + 1e-6) {
            trace.stop_reason = StopReason::Diverged;
            Point last = trace.iterates[k];
            return detail::finish_solve(T, std::move(trace), std::move(last), k + 1, true);
        }
        if (trace.d[k] <= tol) {
            trace.stop_reason = StopReason::Converged;
            Point last = trace.iterates.back();
            return detail::finish_solve(T, std::move(trace), std::move(last), k + 1, true);
        }
    }
    trace.stop_reason = StopReason::MaxIterations;
    Point last = trace.iterates.back();
    return detail::finish_solve(T, std::move(trace), std::move(last), max_iter, true);
}

enum class IdentityStatus { Pass, Fail, Informative };

struct IdentityCheck {
    std::string name;
    double diff = 0.0;  // absolute deviation from the identity
    double tol = 0.0;
    IdentityStatus status = IdentityStatus::Pass;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_passed = true;  // over Pass/Fail checks; Informative rows do not count
};

/// Post-convergence identities, each at 10 x tol:
///   (a) sigma(Tu*, T^2 u*) = sigma(Tu*, G)   (the image is its own best approximation)
///   (b) sigma(u*, T^2 u*) = 0                (two applications return to u*)
///   (c) sigma(Tu*, T^2 u*) = sigma(T^2 u*, H) (the companion is a best approximation in H)
///   (d) sigma(u*, Tu*) = sigma(G, H)         (checked when T was verified a cyclic
///                                             contraction, reported informatively otherwise)
inline IdentityReport verify_solution_identities(const SolveResult& r, const CyclicMapSpec& T,
                                                 double tol = kDefaultTol,
                                                 bool cyclic_contraction_verified = false) {
    if (r.trace.stop_reason != StopReason::Converged)
        throw ConfigError("solution identities require a converged result");
    const double bound = 10.0 * tol;
    IdentityReport report;
    auto add = [&](std::string name, double diff, IdentityStatus status) {
        if (status != IdentityStatus::Informative && diff > bound) status = IdentityStatus::Fail;
        report.checks.push_back({std::move(name), diff, bound, status});
        if (status == IdentityStatus::Fail) report.all_passed = false;
    };

    const Point& u = r.u_star;
    const Point& tu = r.companion;
    const Point t2u = apply(T, tu);

    add("image-best-approximation",
        std::abs(distance(tu, t2u) - point_set_distance(tu, T.domain_g).value),
        IdentityStatus::Pass);
    add("two-step-return", distance(u, t2u), IdentityStatus::Pass);
    add("companion-best-approximation-in-h",
        std::abs(distance(tu, t2u) - point_set_distance(t2u, T.domain_h).value),
        IdentityStatus::Pass);
    add("attains-set-distance",
        std::abs(distance(u, tu) - set_distance(T.domain_g, T.domain_h).value),
        cyclic_contraction_verified ? IdentityStatus::Pass : IdentityStatus::Informative);
    return report;
}

/// Solve from several starts and compare the limits. passed requires every
/// start to converge and the maximum pairwise spread to stay within 10 x tol.
struct UniquenessReport {
    std::vector<Point> limits;
    std::vector<StopReason> outcomes;
    double max_spread = 0.0;
    bool conclusive = true;  // every start converged
    bool passed = false;
};

inline UniquenessReport uniqueness_probe(const CyclicMapSpec& T, const std::vector<Point>& starts,
                                         double tol = kDefaultTol, long max_iter = kDefaultMaxIter) {
    if (starts.size() < 2) throw ConfigError("uniqueness probe needs at least two starts");
    UniquenessReport report;
    for (const auto& s : starts) {
        auto r = solve_best_approximation(T, s, tol, max_iter);
        report.outcomes.push_back(r.trace.stop_reason);
        report.conclusive = report.conclusive && r.trace.stop_reason == StopReason::Converged;
        report.limits.push_back(std::move(r.u_star));
    }
    for (std::size_t i = 0; i < report.limits.size(); ++i)
        for (std::size_t j = i + 1; j < report.limits.size(); ++j)
            report.max_spread = std::max(report.max_spread, distance(report.limits[i], report.limits[j]));
    report.passed = report.conclusive && report.max_spread <= 10.0 * tol;
    return report;
}

}  // namespace proxim
