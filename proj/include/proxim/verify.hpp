#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxim/distance.hpp"
#include "proxim/errors.hpp"
#include "proxim/gauge.hpp"
#include "proxim/maps.hpp"
#include "proxim/sampling.hpp"

namespace proxim {

/// Contraction classes ordered weakest to strongest is not implied; each names
/// one inequality over pairs (u, v) in G x H:
///   Cyclic                       images stay in the opposite set
///   RelativelyNonexpansive       sigma(Tu,Tv) <= sigma(u,v)
///   CyclicContraction(beta)      sigma(Tu,Tv) <= beta sigma(u,v) + (1-beta) sigma(G,H)
///   AlmostCyclicContraction(beta) same with sigma(v,G) in place of sigma(G,H)
///   CyclicPsiContraction         sigma(Tu,Tv) <= (I-psi)(sigma(u,v)) + psi(sigma(G,H))
///   AlmostCyclicPsiContraction   sigma(Tu,Tv) <= (I-psi)(sigma(u,v)) + psi(sigma(v,G))
enum class ContractionClass {
    Cyclic,
    RelativelyNonexpansive,
    CyclicContraction,
    AlmostCyclicContraction,
    CyclicPsiContraction,
    AlmostCyclicPsiContraction,
};

inline std::string to_string(ContractionClass c) {
    switch (c) {
        case ContractionClass::Cyclic: return "cyclic";
        case ContractionClass::RelativelyNonexpansive: return "relatively-nonexpansive";
        case ContractionClass::CyclicContraction: return "cyclic-contraction";
        case ContractionClass::AlmostCyclicContraction: return "almost-cyclic";
        case ContractionClass::CyclicPsiContraction: return "cyclic-psi";
        case ContractionClass::AlmostCyclicPsiContraction: return "almost-cyclic-psi";
    }
    return "?";
}

inline std::optional<ContractionClass> class_from_name(const std::string& name) {
    for (auto c : {ContractionClass::Cyclic, ContractionClass::RelativelyNonexpansive,
                   ContractionClass::CyclicContraction, ContractionClass::AlmostCyclicContraction,
                   ContractionClass::CyclicPsiContraction,
                   ContractionClass::AlmostCyclicPsiContraction})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

enum class VerifyVerdict { HoldsOnSamples, ViolatedWithWitness };

/// Sampled check of one contraction-class inequality. HoldsOnSamples is
/// evidence over the evaluated pairs, not a proof. worst_margin is the
/// minimum of (RHS - LHS) over the pairs; a witness is reported when some
/// pair violates the inequality by more than 1e-9.
struct VerificationReport {
    ContractionClass class_name;
    std::optional<double> beta;
    long samples_checked = 0;
    double worst_margin = 0.0;
    std::optional<std::pair<Point, Point>> witness;
    VerifyVerdict verdict = VerifyVerdict::HoldsOnSamples;
};

struct VerifyOptions {
    long n_samples = 10000;
    std::uint64_t seed = 42;
    bool uniform = false;  // seeded uniform sampling instead of low-discrepancy
    /// Pairs evaluated before any generated samples (gallery instances carry
    /// known witness families that blind sampling cannot reach).
    std::vector<std::pair<Point, Point>> probe_pairs;
};

namespace detail {

/// Deterministic pair stream: probe pairs, then extreme-point cross pairs,
/// then joint low-discrepancy (or seeded uniform) samples of G x H.
class PairStream {
public:
    PairStream(const SetDescriptor& G, const SetDescriptor& H, const VerifyOptions& opt)
        : G_(G),
          H_(H),
          probes_(opt.probe_pairs),
          uniform_(opt.uniform),
          rng_(opt.seed),
          halton_(param_dim(G) + param_dim(H)) {
        corners_g_ = boundary_points(G, 16);
        corners_h_ = boundary_points(H, 16);
    }

    std::pair<Point, Point> next() {
        if (emitted_ < probes_.size()) return probes_[emitted_++];
        std::size_t k = emitted_ - probes_.size();
        const std::size_t cross = corners_g_.size() * corners_h_.size();
        if (k < std::min<std::size_t>(cross, 256)) {
            ++emitted_;
            return {corners_g_[k / corners_h_.size()], corners_h_[k % corners_h_.size()]};
        }
        ++emitted_;
        const std::size_t pg = param_dim(G_);
        const std::size_t ph = param_dim(H_);
        std::vector<double> t(pg + ph);
        if (uniform_) {
            for (auto& v : t) v = rng_.next_double();
        } else {
            t = halton_.next();
        }
        std::vector<double> tg(t.begin(), t.begin() + pg);
        std::vector<double> th(t.begin() + pg, t.end());
        return {param_to_point(G_, tg), param_to_point(H_, th)};
    }

private:
    const SetDescriptor& G_;
    const SetDescriptor& H_;
    std::vector<std::pair<Point, Point>> probes_;
    std::vector<Point> corners_g_, corners_h_;
    bool uniform_;
    SplitMix64 rng_;
    HaltonSampler halton_;
    std::size_t emitted_ = 0;
};

struct MarginEvaluator {
    const CyclicMapSpec& T;
    ContractionClass cls;
    std::optional<double> beta;
    const std::optional<Gauge>& gauge;
    double sigma_gh;  // only read by the classes anchored at sigma(G,H)

    double operator()(const Point& u, const Point& v) const {
        if (cls == ContractionClass::Cyclic) {
            const double escape_u = point_set_distance(apply_branch(T.forward, u), T.domain_h).value;
            const double escape_v = point_set_distance(apply_branch(T.backward, v), T.domain_g).value;
            return -std::max(escape_u, escape_v);
        }
        const Point tu = apply_branch(T.forward, u);
        const Point tv = apply_branch(T.backward, v);
        const double lhs = distance(tu, tv);
        const double s = distance(u, v);
        switch (cls) {
            case ContractionClass::RelativelyNonexpansive:
                return s - lhs;
            case ContractionClass::CyclicContraction:
                return *beta * s + (1.0 - *beta) * sigma_gh - lhs;
            case ContractionClass::AlmostCyclicContraction: {
                const double anchor = point_set_distance(v, T.domain_g).value;
                return *beta * s + (1.0 - *beta) * anchor - lhs;
            }
            case ContractionClass::CyclicPsiContraction:
                return gauge_eval(*gauge, s).i_minus_psi + gauge_eval(*gauge, sigma_gh).psi - lhs;
            case ContractionClass::AlmostCyclicPsiContraction: {
                const double anchor = point_set_distance(v, T.domain_g).value;
                return gauge_eval(*gauge, s).i_minus_psi + gauge_eval(*gauge, anchor).psi - lhs;
            }
            default:
                return 0.0;  // unreachable
        }
    }
};

inline void check_class_config(ContractionClass cls, const std::optional<double>& beta,
                               const std::optional<Gauge>& gauge) {
    const bool needs_beta = cls == ContractionClass::CyclicContraction ||
                            cls == ContractionClass::AlmostCyclicContraction;
    const bool needs_gauge = cls == ContractionClass::CyclicPsiContraction ||
                             cls == ContractionClass::AlmostCyclicPsiContraction;
    if (needs_beta) {
        if (!beta) throw ConfigError("class " + to_string(cls) + " needs a beta in [0, 1)");
        if (!(*beta >= 0.0 && *beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");
    }
    if (needs_gauge && !gauge) throw ConfigError("class " + to_string(cls) + " needs a gauge");
}

}  // namespace detail

/// Evaluate the class inequality on n_samples pairs of G x H and report the
/// worst margin plus the first violating witness, if any. Deterministic for
/// fixed options; a returned witness re-violates its inequality by more than
/// 1e-9 when re-evaluated from raw coordinates.
inline VerificationReport verify_class(const CyclicMapSpec& T, ContractionClass cls,
                                       std::optional<double> beta, const std::optional<Gauge>& gauge,
                                       const VerifyOptions& opt = {}) {
    detail::check_class_config(cls, beta, gauge);
    if (opt.n_samples < 1) throw ConfigError("verify_class needs n_samples >= 1");

    double sigma_gh = 0.0;
    if (cls == ContractionClass::CyclicContraction || cls == ContractionClass::CyclicPsiContraction)
        sigma_gh = set_distance(T.domain_g, T.domain_h).value;

    detail::MarginEvaluator margin{T, cls, beta, gauge, sigma_gh};
    detail::PairStream stream(T.domain_g, T.domain_h, opt);

    VerificationReport report;
    report.class_name = cls;
    report.beta = beta;
    const long total =
        std::max<long>(opt.n_samples, static_cast<long>(opt.probe_pairs.size()));
    double worst = std::numeric_limits<double>::infinity();
    for (long i = 0; i < total; ++i) {
        auto [u, v] = stream.next();
        const double m = margin(u, v);
        if (m < worst) worst = m;
        if (m < -1e-9 && !report.witness) report.witness = std::make_pair(u, v);
    }
    report.samples_checked = total;
    report.worst_margin = worst;
    report.verdict =
        report.witness ? VerifyVerdict::ViolatedWithWitness : VerifyVerdict::HoldsOnSamples;
    return report;
}

/// Tightest beta satisfying the (almost) cyclic contraction inequality on the
/// sampled pairs: sup over pairs of (LHS - anchor) / (sigma(u,v) - anchor).
/// Pairs whose denominator is negligible against the pair's own scale
/// constrain nothing (rounding noise would swamp the quotient) and are
/// skipped. Returns nullopt (NotContractive) when the supremum reaches
/// 1 - 1e-9.
inline std::optional<double> estimate_min_beta(const CyclicMapSpec& T, ContractionClass cls,
                                               const VerifyOptions& opt = {}) {
    if (cls != ContractionClass::CyclicContraction &&
        cls != ContractionClass::AlmostCyclicContraction)
        throw ConfigError("estimate_min_beta applies to the contraction classes only");
    if (opt.n_samples < 1) throw ConfigError("estimate_min_beta needs n_samples >= 1");

    const bool anchored_at_pair = cls == ContractionClass::AlmostCyclicContraction;
    const double sigma_gh =
        anchored_at_pair ? 0.0 : set_distance(T.domain_g, T.domain_h).value;

    detail::PairStream stream(T.domain_g, T.domain_h, opt);
    const long total =
        std::max<long>(opt.n_samples, static_cast<long>(opt.probe_pairs.size()));
    double sup_beta = 0.0;
    for (long i = 0; i < total; ++i) {
        auto [u, v] = stream.next();
        const double s = distance(u, v);
        const double anchor =
            anchored_at_pair ? point_set_distance(v, T.domain_g).value : sigma_gh;
        const double denom = s - anchor;
        if (denom <= 1e-8 * std::max(s, anchor)) continue;
        const double required = (distance(apply_branch(T.forward, u), apply_branch(T.backward, v)) -
                                 anchor) /
                                denom;
        if (required > sup_beta) sup_beta = required;
    }
    if (sup_beta >= 1.0 - 1e-9) return std::nullopt;
    return sup_beta;
}

}  // namespace proxim
