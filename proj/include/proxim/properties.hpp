#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/sampling.hpp"
#include "proxim/sets.hpp"

namespace proxim {

enum class PropertyKind { UC, StronglyUC };

/// A static triple standing in for the sequence families of the property
/// definitions: u, z in G approach v in H at the anchor level while staying
/// separated. defect is the larger of the two approach gaps; separation is
/// sigma(u, z). A family of such triples with defect -> 0 and separation
/// bounded below is exactly what the property forbids.
struct PropertyWitness {
    Point u, z;  // in G
    Point v;     // in H
    double defect = 0.0;
    double separation = 0.0;
    PropertyKind property = PropertyKind::StronglyUC;
};

enum class PropertyVerdict { ViolationCandidate, NoViolationFound };

/// One-sided search outcome: NoViolationFound is evidence at the reported
/// search budget, never a proof. The witness is present exactly when it meets
/// both thresholds (defect <= delta, separation >= epsilon).
struct PropertyReport {
    PropertyVerdict verdict = PropertyVerdict::NoViolationFound;
    std::optional<PropertyWitness> best_witness;
    long search_budget = 0;
    double delta = 0.0;
    double epsilon = 0.0;
};

struct FalsifyOptions {
    double delta = 1e-3;
    double epsilon = 1e-2;
    long budget = 10000;  // number of defect evaluations
    std::uint64_t seed = 42;
    bool uniform = false;
    /// Replayed candidate (e.g. a witness from a looser-threshold run),
    /// validated before any search.
    std::optional<PropertyWitness> hint;
};

namespace detail {

struct DefectFn {
    PropertyKind kind;
    const SetDescriptor& G;
    double sigma_gh;  // anchor for UC
    long* budget_left;

    double operator()(const Point& u, const Point& z, const Point& v) const {
        --*budget_left;
        const double anchor =
            kind == PropertyKind::UC ? sigma_gh : point_set_distance(v, G).value;
        return std::max(distance(u, v) - anchor, distance(z, v) - anchor);
    }
};

inline std::vector<double> clamp01(std::vector<double> t) {
    for (auto& v : t) v = std::clamp(v, 0.0, 1.0);
    return t;
}

/// Shared falsifier engine. Multistart over joint (u, z, v) parameters; u is
/// anchored at its start value, v descends the defect, z climbs the
/// separation subject to defect <= delta, alternating until stable. Returns
/// the first start whose refined triple meets both thresholds.
inline PropertyReport falsify(PropertyKind kind, const SetDescriptor& G, const SetDescriptor& H,
                              const FalsifyOptions& opt) {
    require_compatible(G, H);
    if (!(opt.delta > 0.0) || !(opt.epsilon > 0.0) || opt.budget < 1)
        throw ConfigError("falsifier needs delta > 0, epsilon > 0, budget >= 1");

    PropertyReport report;
    report.search_budget = opt.budget;
    report.delta = opt.delta;
    report.epsilon = opt.epsilon;

    const double sigma_gh =
        kind == PropertyKind::UC ? set_distance(G, H).value : 0.0;
    long budget_left = opt.budget;
    DefectFn defect{kind, G, sigma_gh, &budget_left};

    auto qualify = [&](const Point& u, const Point& z, const Point& v) -> bool {
        // Final thresholds, recomputed from raw coordinates.
        const double d = defect(u, z, v);
        const double sep = distance(u, z);
        if (d <= opt.delta && sep >= opt.epsilon && sep > 0.0) {
            report.verdict = PropertyVerdict::ViolationCandidate;
            report.best_witness = PropertyWitness{u, z, v, d, sep, kind};
            return true;
        }
        return false;
    };

    if (opt.hint && qualify(opt.hint->u, opt.hint->z, opt.hint->v)) return report;

    const std::size_t pg = param_dim(G);
    const std::size_t ph = param_dim(H);
    HaltonSampler halton(pg + pg + ph);
    SplitMix64 rng(opt.seed);

    while (budget_left > 0) {
        std::vector<double> t;
        if (opt.uniform) {
            t.resize(pg + pg + ph);
            for (auto& v : t) v = rng.next_double();
        } else {
            t = halton.next();
        }
        std::vector<double> tu(t.begin(), t.begin() + pg);
        std::vector<double> tz(t.begin() + pg, t.begin() + 2 * pg);
        std::vector<double> tv(t.begin() + 2 * pg, t.end());

        const Point u = param_to_point(G, tu);  // anchored for this start
        Point z = param_to_point(G, tz);
        Point v = param_to_point(H, tv);
        double cur = defect(u, z, v);

        for (int round = 0; round < 100 && budget_left > 0; ++round) {
            bool improved = false;

            // (a) Descend the defect over v's parameters, step-halving.
            for (double step = 0.25; step > 1e-7 && budget_left > 0; step *= 0.5) {
                bool moved = true;
                while (moved && budget_left > 0) {
                    moved = false;
                    for (std::size_t i = 0; i < ph && budget_left > 0; ++i) {
                        for (double dir : {+1.0, -1.0}) {
                            auto t2 = tv;
                            t2[i] = std::clamp(t2[i] + dir * step, 0.0, 1.0);
                            if (t2[i] == tv[i]) continue;
                            Point v2 = param_to_point(H, t2);
                            const double d2 = defect(u, z, v2);
                            if (d2 < cur - 1e-14) {
                                tv = std::move(t2);
                                v = std::move(v2);
                                cur = d2;
                                moved = improved = true;
                                break;
                            }
                        }
                    }
                }
            }

            if (cur > opt.delta) break;  // this start cannot qualify; next multistart

            // (b) Grow the separation over z's parameters while the defect
            // stays within delta. u never moves.
            double sep = distance(u, z);
            for (double step = 0.25; step > 1e-7 && budget_left > 0; step *= 0.5) {
                bool moved = true;
                while (moved && budget_left > 0) {
                    moved = false;
                    for (std::size_t i = 0; i < pg && budget_left > 0; ++i) {
                        for (double dir : {+1.0, -1.0}) {
                            auto t2 = tz;
                            t2[i] = std::clamp(t2[i] + dir * step, 0.0, 1.0);
                            if (t2[i] == tz[i]) continue;
                            Point z2 = param_to_point(G, t2);
                            const double s2 = distance(u, z2);
                            if (s2 <= sep + 1e-14) continue;
                            const double d2 = defect(u, z2, v);
                            if (d2 <= opt.delta) {
                                tz = std::move(t2);
                                z = std::move(z2);
                                sep = s2;
                                cur = d2;
                                moved = improved = true;
                                break;
                            }
                        }
                    }
                }
            }

            if (!improved) break;
        }

        if (cur <= opt.delta && qualify(u, z, v)) return report;
    }

    report.verdict = PropertyVerdict::NoViolationFound;
    report.best_witness.reset();
    return report;
}

}  // namespace detail

/// Search for a strongly-UC violation: u, z in G separated by at least
/// epsilon, both within delta of the approach level sigma(v, G) of some
/// v in H.
inline PropertyReport falsify_strongly_uc(const SetDescriptor& G, const SetDescriptor& H,
                                          const FalsifyOptions& opt = {}) {
    return detail::falsify(PropertyKind::StronglyUC, G, H, opt);
}

/// Same search with the approach level measured against sigma(G, H).
inline PropertyReport falsify_uc(const SetDescriptor& G, const SetDescriptor& H,
                                 const FalsifyOptions& opt = {}) {
    return detail::falsify(PropertyKind::UC, G, H, opt);
}

/// Two distance-level partners of one swept point, further apart than the
/// requested resolution.
struct SemiSharpWitness {
    Point swept;
    Point first, second;
};

enum class SemiSharpVerdict { SemiSharpOnSamples, CounterexampleFound };

struct SemiSharpReport {
    SemiSharpVerdict verdict = SemiSharpVerdict::SemiSharpOnSamples;
    std::optional<SemiSharpWitness> witness;
    long points_checked = 0;
};

/// Sweep sampled points of each set that attain sigma(G, H) against the other
/// set (within 1e-8) and report a counterexample when one of them admits two
/// distance-level partners separated by more than resolution.
inline SemiSharpReport check_semi_sharp_proximal(const SetDescriptor& G, const SetDescriptor& H,
                                                 double resolution = 1e-2) {
    require_compatible(G, H);
    if (!(resolution > 0.0)) throw ConfigError("semi-sharp check needs resolution > 0");
    const double sigma_gh = set_distance(G, H).value;

    SemiSharpReport report;
    auto sweep = [&](const SetDescriptor& from, const SetDescriptor& to) -> bool {
        std::vector<Point> points = boundary_points(from, 16);
        {
            // The attaining pair itself is the most likely sweep point.
            auto w = set_distance(to, from).witness;  // witness lies in `from`
            if (w) points.push_back(std::move(*w));
        }
        for (auto& p : sample_set(from, 256, 0)) points.push_back(std::move(p));
        for (const auto& x : points) {
            if (point_set_distance(x, to).value > sigma_gh + 1e-8) continue;
            ++report.points_checked;
            auto cands = project_candidates(x, to, 8);
            for (std::size_t i = 0; i < cands.size(); ++i)
                for (std::size_t j = i + 1; j < cands.size(); ++j)
                    if (distance(cands[i], cands[j]) > resolution) {
                        report.verdict = SemiSharpVerdict::CounterexampleFound;
                        report.witness = SemiSharpWitness{x, cands[i], cands[j]};
                        return true;
                    }
        }
        return false;
    };

    if (!sweep(G, H)) sweep(H, G);
    return report;
}

/// Empirical harness for the implication "UC and proximal implies strongly
/// UC": when every sampled point of each set attains sigma(G, H) against the
/// other (within 1e-6) and the UC falsifier is silent, the strongly-UC
/// falsifier must be silent on the same budget; contradiction flags the
/// opposite outcome.
struct ImplicationProbeReport {
    bool premise_holds = false;  // proximality of the pair, on samples
    std::optional<Point> premise_counterexample;
    std::optional<PropertyReport> uc;
    std::optional<PropertyReport> strongly_uc;
    bool contradiction = false;
};

inline ImplicationProbeReport uc_implies_suc_probe(const SetDescriptor& G, const SetDescriptor& H,
                                                   long budget = 10000, std::uint64_t seed = 42,
                                                   double delta = 1e-6, double epsilon = 1e-2) {
    require_compatible(G, H);
    ImplicationProbeReport report;
    const double sigma_gh = set_distance(G, H).value;

    auto proximal_on_samples = [&](const SetDescriptor& from, const SetDescriptor& to) {
        std::vector<Point> points = boundary_points(from, 16);
        for (auto& p : sample_set(from, 128, 0)) points.push_back(std::move(p));
        for (const auto& x : points) {
            if (std::abs(point_set_distance(x, to).value - sigma_gh) > 1e-6) {
                report.premise_counterexample = x;
                return false;
            }
        }
        return true;
    };

    report.premise_holds = proximal_on_samples(G, H) && proximal_on_samples(H, G);
    if (!report.premise_holds) return report;  // probe inapplicable, no assertion

    FalsifyOptions opt;
    opt.delta = delta;
    opt.epsilon = epsilon;
    opt.budget = budget;
    opt.seed = seed;
    report.uc = falsify_uc(G, H, opt);
    report.strongly_uc = falsify_strongly_uc(G, H, opt);
    report.contradiction = report.uc->verdict == PropertyVerdict::NoViolationFound &&
                           report.strongly_uc->verdict == PropertyVerdict::ViolationCandidate;
    return report;
}

}  // namespace proxim
