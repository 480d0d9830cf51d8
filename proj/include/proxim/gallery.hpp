#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/gauge.hpp"
#include "proxim/maps.hpp"
#include "proxim/properties.hpp"
#include "proxim/sets.hpp"
#include "proxim/solver.hpp"
#include "proxim/verify.hpp"

namespace proxim {

/// One expected quantity of a gallery instance. run_instances computes each
/// quantity through the matching library operation and diffs against value.
/// Quantities ending in "-max" are one-sided (actual <= value passes); all
/// others pass when |actual - value| <= tolerance.
struct ExpectedValue {
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
};

/// A named, self-contained worked example: a set pair, optionally a cyclic
/// map with a gauge, a default start, deterministic probe pairs for the
/// verifier, and the frozen expected values.
struct GalleryInstance {
    std::string name;
    std::string summary;
    SetDescriptor g;
    SetDescriptor h;
    std::optional<CyclicMapSpec> map;
    std::optional<Gauge> gauge;
    std::optional<Point> start;
    bool fixed_point_mode = false;
    std::vector<std::pair<Point, Point>> probe_pairs;
    std::optional<double> cyclic_beta;  // set when the map is a cyclic contraction
    int grid = 0;                       // discretization level (gridded instances only)
    double solver_tol = 1e-9;
    long solver_max_iter = kDefaultMaxIter;
    // falsifier settings used by the property quantities
    double falsify_delta = 1e-3;
    double suc_epsilon = 0.4;
    double uc_epsilon = 0.05;
    long falsify_budget = 20000;
    std::vector<ExpectedValue> expected;
};

inline const std::vector<std::string>& gallery_names() {
    static const std::vector<std::string> names = {
        "uc-not-suc", "function-space", "intervals-psi", "midpoint-pull", "fixed-point-halving"};
    return names;
}

namespace detail {

inline Point pt1(double x, NormTag norm) { return make_point({x}, norm); }

inline GalleryInstance make_uc_not_suc() {
    GalleryInstance inst;
    inst.name = "uc-not-suc";
    inst.summary =
        "perpendicular touching segments under the sup norm: sequences merging at the "
        "set-distance level need not merge at the pointwise approach level";
    const NormTag sup = NormTag::sup();
    inst.g = make_segment(make_point({0.0, 0.0}, sup), make_point({0.0, 1.0}, sup));
    inst.h = make_segment(make_point({0.0, 0.0}, sup), make_point({1.0, 0.0}, sup));
    inst.expected = {
        {"sigma-gh", 0.0, 0.0},
        {"strongly-uc-separation", 0.5, 0.05},
        {"strongly-uc-defect", 0.0, 1e-3},
        {"uc-silent", 1.0, 0.0},
    };
    return inst;
}

inline GalleryInstance make_function_space(int grid) {
    if (grid < 1) throw ConfigError("function-space grid must be at least 1");
    GalleryInstance inst;
    inst.name = "function-space";
    inst.summary =
        "discretized pair of function classes (real-valued vs imaginary-valued, sup norm) "
        "whose map damps the carried component; no single damping factor works";
    const NormTag sup = NormTag::sup();
    const std::size_t n = static_cast<std::size_t>(grid);
    std::vector<double> lo(2 * n, 0.0), hi_g(2 * n, 0.0), hi_h(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) hi_g[i] = 1.0;
    for (std::size_t i = n; i < 2 * n; ++i) hi_h[i] = 1.0;
    inst.g = make_grid_box(lo, hi_g, sup);
    inst.h = make_grid_box(lo, hi_h, sup);
    inst.grid = grid;

    CyclicMapSpec map;
    map.forward = BranchRule{NamedRule{"function-space-forward"}};
    map.backward = BranchRule{NamedRule{"function-space-backward"}};
    map.domain_g = inst.g;
    map.domain_h = inst.h;
    inst.map = std::move(map);
    inst.gauge = make_rational_gauge();

    auto const_pair = [&](double s) {
        std::vector<double> u(2 * n, 0.0), v(2 * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) u[i] = s;
        for (std::size_t i = n; i < 2 * n; ++i) v[i] = s / 2.0;
        return std::make_pair(make_point(u, sup), make_point(v, sup));
    };
    // Witness pairs for beta in {0, 0.25, 0.5, 0.75} at 90% of the violating
    // range, then a dyadic ladder pushing the required beta toward 1.
    for (double beta : {0.0, 0.25, 0.5, 0.75})
        inst.probe_pairs.push_back(const_pair(0.9 * (1.0 - beta) / (1.0 + beta)));
    for (int k = 1; k <= 40; ++k) inst.probe_pairs.push_back(const_pair(std::ldexp(1.0, -k)));

    std::vector<double> u0(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) u0[i] = 1.0;
    inst.start = make_point(u0, sup);

    inst.expected = {
        {"sigma-gh", 0.0, 0.0},
        {"class-holds:almost-cyclic-psi", 1.0, 0.0},
        {"not-contractive", 1.0, 0.0},
        {"class-violated:almost-cyclic:beta=0", 1.0, 0.0},
        {"class-violated:almost-cyclic:beta=0.25", 1.0, 0.0},
        {"class-violated:almost-cyclic:beta=0.5", 1.0, 0.0},
        {"class-violated:almost-cyclic:beta=0.75", 1.0, 0.0},
        {"solve-converged", 1.0, 0.0},
        {"solve-gap", 0.0, 1e-4},
        {"identities-pass", 1.0, 0.0},
    };
    return inst;
}

inline GalleryInstance make_intervals_psi() {
    GalleryInstance inst;
    inst.name = "intervals-psi";
    inst.summary =
        "intervals [1,2] and [-2,-1] with a collapse-and-reflect map: the shifted gauge "
        "inequality holds with equality yet no unshifted gauge works";
    const NormTag norm = NormTag::euclidean();
    inst.g = make_interval(1.0, 2.0, norm);
    inst.h = make_interval(-2.0, -1.0, norm);

    CyclicMapSpec map;
    map.forward = BranchRule{ConstantRule{pt1(-1.0, norm)}};
    map.backward = BranchRule{ComponentwiseRule{{ComponentExpr{-1.0, 0.0}}}};
    map.domain_g = inst.g;
    map.domain_h = inst.h;
    inst.map = std::move(map);
    inst.gauge = make_affine_shift_gauge();
    inst.start = pt1(1.5, norm);
    inst.probe_pairs = {{pt1(1.5, norm), pt1(-2.0, norm)}};

    inst.expected = {
        {"sigma-gh", 2.0, 0.0},
        {"solve-converged", 1.0, 0.0},
        {"solve-u-star", 1.0, 1e-8},
        {"solve-companion", -1.0, 1e-8},
        {"solve-residual", 0.0, 1e-9},
        {"class-holds:almost-cyclic-psi", 1.0, 0.0},
        {"class-violated:cyclic-psi", 1.0, 0.0},
        {"semi-sharp", 1.0, 0.0},
        {"identities-pass", 1.0, 0.0},
    };
    return inst;
}

inline GalleryInstance make_midpoint_pull() {
    GalleryInstance inst;
    inst.name = "midpoint-pull";
    inst.summary =
        "intervals [1,2] and [-2,-1] with the affine pull T(x) = -(x+1)/2, T(y) = -(y-1)/2: "
        "an exact damping factor of 1/2 with closed-form step sizes";
    const NormTag norm = NormTag::euclidean();
    inst.g = make_interval(1.0, 2.0, norm);
    inst.h = make_interval(-2.0, -1.0, norm);

    CyclicMapSpec map;
    map.forward = BranchRule{ComponentwiseRule{{ComponentExpr{-0.5, -0.5}}}};
    map.backward = BranchRule{ComponentwiseRule{{ComponentExpr{-0.5, 0.5}}}};
    map.domain_g = inst.g;
    map.domain_h = inst.h;
    inst.map = std::move(map);
    inst.gauge = make_linear_gauge(0.5);
    inst.cyclic_beta = 0.5;
    inst.start = pt1(2.0, norm);

    inst.expected = {
        {"sigma-gh", 2.0, 0.0},
        {"min-beta", 0.5, 1e-6},
        {"solve-converged", 1.0, 0.0},
        {"solve-u-star", 1.0, 1e-8},
        {"solve-gap", 0.0, 1e-8},
        {"solve-iterations-max", 70.0, 0.0},
        {"class-holds:cyclic-contraction", 1.0, 0.0},
        {"even-step-ratio-dev", 0.0, 1e-9},
        {"identities-pass", 1.0, 0.0},
        {"uniqueness-spread", 0.0, 1e-8},
    };
    return inst;
}

inline GalleryInstance make_fixed_point_halving() {
    GalleryInstance inst;
    inst.name = "fixed-point-halving";
    inst.summary = "coinciding sets G = H = [0,1] with T(x) = x/2: plain contraction iteration";
    const NormTag norm = NormTag::euclidean();
    inst.g = make_interval(0.0, 1.0, norm);
    inst.h = make_interval(0.0, 1.0, norm);

    CyclicMapSpec map;
    map.forward = BranchRule{ComponentwiseRule{{ComponentExpr{0.5, 0.0}}}};
    map.backward = BranchRule{ComponentwiseRule{{ComponentExpr{0.5, 0.0}}}};
    map.domain_g = inst.g;
    map.domain_h = inst.h;
    inst.map = std::move(map);
    inst.gauge = make_linear_gauge(0.5);
    inst.cyclic_beta = 0.5;
    inst.start = pt1(1.0, norm);
    inst.fixed_point_mode = true;

    inst.expected = {
        {"sigma-gh", 0.0, 0.0},
        {"fixed-point-u-star", 0.0, 1e-8},
        {"min-beta", 0.5, 1e-6},
        {"class-holds:cyclic-contraction", 1.0, 0.0},
        {"semi-sharp", 1.0, 0.0},
        {"identities-pass", 1.0, 0.0},
    };
    return inst;
}

}  // namespace detail

/// Look up a built-in instance. grid > 0 overrides the discretization of
/// gridded instances (and is rejected for the others).
inline GalleryInstance load(const std::string& name, int grid = 0) {
    GalleryInstance inst;
    if (name == "uc-not-suc") {
        inst = detail::make_uc_not_suc();
    } else if (name == "function-space") {
        inst = detail::make_function_space(grid > 0 ? grid : 64);
        return inst;
    } else if (name == "intervals-psi") {
        inst = detail::make_intervals_psi();
    } else if (name == "midpoint-pull") {
        inst = detail::make_midpoint_pull();
    } else if (name == "fixed-point-halving") {
        inst = detail::make_fixed_point_halving();
    } else {
        throw NotFoundError("no gallery instance named '" + name + "'");
    }
    if (grid > 0) throw ConfigError("instance '" + name + "' has no grid parameter");
    return inst;
}

struct GalleryCheck {
    std::string instance;
    std::string quantity;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct GalleryReport {
    std::vector<GalleryCheck> checks;
    bool all_passed = true;
};

namespace detail {

/// Lazy per-instance computations shared across expected quantities.
class InstanceRun {
  public:
    explicit InstanceRun(const GalleryInstance& inst) : inst_(inst) {}

    const SolveResult& solve() {
        if (!solve_) {
            if (!inst_.map || !inst_.start)
                throw ConfigError("instance '" + inst_.name + "' has no map to solve");
            solve_ = inst_.fixed_point_mode
                         ? solve_fixed_point(*inst_.map, *inst_.start, inst_.solver_tol,
                                             inst_.solver_max_iter)
                         : solve_best_approximation(*inst_.map, *inst_.start, inst_.solver_tol,
                                                    inst_.solver_max_iter);
        }
        return *solve_;
    }

    VerificationReport verify(ContractionClass cls, std::optional<double> beta) {
        if (!inst_.map) throw ConfigError("instance '" + inst_.name + "' has no map to verify");
        VerifyOptions opt;
        opt.probe_pairs = inst_.probe_pairs;
        return verify_class(*inst_.map, cls, beta, inst_.gauge, opt);
    }

    double scalar_coord(const Point& p) const {
        if (p.dim() != 1)
            throw ConfigError("instance '" + inst_.name + "' is not one-dimensional");
        return p.coords[0];
    }

    /// Worst deviation of the even-step d-column from the closed-form
    /// geometric recurrence excess0 * 2^-k over sigma(G,H), plus the direct
    /// step-ratio deviation from 1/2 where the excess is still well above
    /// rounding.
    double even_step_ratio_dev() {
        if (!inst_.map || !inst_.start) throw ConfigError("instance has no map to iterate");
        const auto trace = iterate(*inst_.map, *inst_.start, 80);
        const double sigma_gh = set_distance(inst_.g, inst_.h).value;
        const double excess0 = trace.d[0] - sigma_gh;
        double dev = 0.0;
        for (std::size_t k = 0; k + 1 < trace.d.size(); k += 2) {
            const double excess = trace.d[k] - sigma_gh;
            const double predicted = excess0 * std::ldexp(1.0, -static_cast<int>(k));
            dev = std::max(dev, std::abs(excess - predicted));
            if (predicted >= 1e-6)
                dev = std::max(dev, std::abs((trace.d[k + 1] - sigma_gh) / excess - 0.5));
        }
        return dev;
    }

    double evaluate(const ExpectedValue& e) {
        const std::string& q = e.quantity;
        if (q == "sigma-gh") return set_distance(inst_.g, inst_.h).value;
        if (q == "solve-converged")
            return solve().trace.stop_reason == StopReason::Converged ? 1.0 : 0.0;
        if (q == "solve-u-star" || q == "fixed-point-u-star") return scalar_coord(solve().u_star);
        if (q == "solve-companion") return scalar_coord(solve().companion);
        if (q == "solve-residual") return solve().residual;
        if (q == "solve-gap") return solve().gap_to_infimum;
        if (q == "solve-iterations-max") return static_cast<double>(solve().iterations);
        if (q == "identities-pass") {
            if (!inst_.map) throw ConfigError("instance has no map");
            return verify_solution_identities(solve(), *inst_.map, inst_.solver_tol,
                                              inst_.cyclic_beta.has_value())
                           .all_passed
                       ? 1.0
                       : 0.0;
        }
        if (q == "uniqueness-spread") {
            auto [lo, hi] = box_bounds(inst_.g);
            std::vector<Point> starts = {make_point(lo, inst_.g.norm),
                                         make_point(hi, inst_.g.norm)};
            return uniqueness_probe(*inst_.map, starts, inst_.solver_tol, inst_.solver_max_iter)
                .max_spread;
        }
        if (q == "min-beta") {
            auto b = estimate_min_beta(*inst_.map, ContractionClass::CyclicContraction);
            return b ? *b : std::nan("");
        }
        if (q == "not-contractive") {
            auto b = estimate_min_beta(*inst_.map, ContractionClass::AlmostCyclicContraction,
                                       verify_options());
            return b ? 0.0 : 1.0;
        }
        if (q.rfind("class-holds:", 0) == 0 || q.rfind("class-violated:", 0) == 0) {
            const bool want_hold = q.rfind("class-holds:", 0) == 0;
            std::string rest = q.substr(q.find(':') + 1);
            std::optional<double> beta = inst_.cyclic_beta;
            const auto sep = rest.find(":beta=");
            if (sep != std::string::npos) {
                beta = std::stod(rest.substr(sep + 6));
                rest = rest.substr(0, sep);
            }
            const auto cls = class_from_name(rest);
            if (!cls) throw ConfigError("unknown contraction class '" + rest + "'");
            const auto report = verify(*cls, beta);
            const bool holds = report.verdict == VerifyVerdict::HoldsOnSamples;
            return (holds == want_hold) ? 1.0 : 0.0;
        }
        if (q == "strongly-uc-separation" || q == "strongly-uc-defect") {
            const auto& rep = suc_report();
            if (!rep.best_witness) return std::nan("");
            return q == "strongly-uc-separation" ? rep.best_witness->separation
                                                 : rep.best_witness->defect;
        }
        if (q == "uc-silent") {
            FalsifyOptions opt;
            opt.delta = inst_.falsify_delta;
            opt.epsilon = inst_.uc_epsilon;
            opt.budget = inst_.falsify_budget;
            const auto rep = falsify_uc(inst_.g, inst_.h, opt);
            return rep.verdict == PropertyVerdict::NoViolationFound ? 1.0 : 0.0;
        }
        if (q == "semi-sharp") {
            const auto rep = check_semi_sharp_proximal(inst_.g, inst_.h);
            return rep.verdict == SemiSharpVerdict::SemiSharpOnSamples ? 1.0 : 0.0;
        }
        if (q == "even-step-ratio-dev") return even_step_ratio_dev();
        throw ConfigError("unknown expected quantity '" + q + "'");
    }

  private:
    VerifyOptions verify_options() const {
        VerifyOptions opt;
        opt.probe_pairs = inst_.probe_pairs;
        return opt;
    }

    const PropertyReport& suc_report() {
        if (!suc_) {
            FalsifyOptions opt;
            opt.delta = inst_.falsify_delta;
            opt.epsilon = inst_.suc_epsilon;
            opt.budget = inst_.falsify_budget;
            suc_ = falsify_strongly_uc(inst_.g, inst_.h, opt);
        }
        return *suc_;
    }

    const GalleryInstance& inst_;
    std::optional<SolveResult> solve_;
    std::optional<PropertyReport> suc_;
};

}  // namespace detail

/// Evaluate every expected quantity of the given instances.
inline GalleryReport run_instances(const std::vector<GalleryInstance>& instances) {
    GalleryReport report;
    for (const auto& inst : instances) {
        detail::InstanceRun run(inst);
        for (const auto& e : inst.expected) {
            GalleryCheck check;
            check.instance = inst.name;
            check.quantity = e.quantity;
            check.expected = e.value;
            check.tolerance = e.tolerance;
            check.actual = run.evaluate(e);
            const bool one_sided = e.quantity.size() >= 4 &&
                                   e.quantity.compare(e.quantity.size() - 4, 4, "-max") == 0;
            check.passed = one_sided ? check.actual <= e.value + e.tolerance
                                     : std::abs(check.actual - e.value) <= e.tolerance;
            report.all_passed = report.all_passed && check.passed;
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

/// Evaluate all built-in instances. grid > 0 overrides the discretization of
/// the gridded instances.
inline GalleryReport run_all(int grid = 0) {
    std::vector<GalleryInstance> instances;
    for (const auto& name : gallery_names())
        instances.push_back(name == "function-space" ? load(name, grid) : load(name));
    return run_instances(instances);
}

}  // namespace proxim
