#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxim/gallery.hpp"
#include "proxim/instance_io.hpp"
#include "proxim/properties.hpp"
#include "proxim/solver.hpp"
#include "proxim/verify.hpp"

namespace proxim {

inline constexpr const char* kToolName = "proxim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Format a double with 15 significant digits.
inline std::string format15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

/// Canonicalize a double to its 15-significant-digit decimal value, making
/// serialized reports reproducible byte for byte across runs.
inline double round15(double x) { return std::strtod(format15(x).c_str(), nullptr); }

namespace detail {

inline ojson coords15(const std::vector<double>& coords) {
    ojson arr = ojson::array();
    for (double c : coords) arr.push_back(round15(c));
    return arr;
}

}  // namespace detail

/// Write text to path via a temp file and rename, so readers never observe a
/// partial document.
inline void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << text;
        if (!out.flush()) throw std::runtime_error("cannot write file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

/// Common report envelope; callers fill "results" and then append wall time
/// last so byte-level diffs of reruns differ in that one line only.
inline ojson report_skeleton(const std::string& operation, const ojson& instance_echo,
                             std::uint64_t seed) {
    ojson doc;
    doc["tool"] = ojson{{"name", kToolName}, {"version", kToolVersion}};
    doc["operation"] = operation;
    doc["instance"] = instance_echo;
    doc["seed"] = seed;
    doc["results"] = ojson::object();
    return doc;
}

inline void finish_report(ojson& doc, double wall_time_seconds) {
    doc["wall_time_seconds"] = round15(wall_time_seconds);
}

inline ojson solve_result_to_json(const SolveResult& r, double sigma_gh) {
    ojson j;
    j["stop_reason"] = to_string(r.trace.stop_reason);
    j["iterations"] = r.iterations;
    j["u_star"] = detail::coords15(r.u_star.coords);
    j["companion"] = detail::coords15(r.companion.coords);
    j["residual"] = round15(r.residual);
    j["gap_to_infimum"] = round15(r.gap_to_infimum);
    j["sigma_gh"] = round15(sigma_gh);
    return j;
}

inline ojson verification_to_json(const VerificationReport& r) {
    ojson j;
    j["class"] = to_string(r.class_name);
    if (r.beta) j["beta"] = round15(*r.beta);
    j["samples_checked"] = r.samples_checked;
    j["worst_margin"] = round15(r.worst_margin);
    j["verdict"] = r.verdict == VerifyVerdict::HoldsOnSamples ? "HoldsOnSamples"
                                                              : "ViolatedWithWitness";
    if (r.witness) {
        j["witness"] = ojson{{"u", detail::coords15(r.witness->first.coords)},
                             {"v", detail::coords15(r.witness->second.coords)}};
    }
    return j;
}

inline ojson property_report_to_json(const PropertyReport& r, const std::string& property) {
    ojson j;
    j["property"] = property;
    j["verdict"] = r.verdict == PropertyVerdict::ViolationCandidate ? "ViolationCandidate"
                                                                    : "NoViolationFound";
    j["search_budget"] = r.search_budget;
    j["delta"] = round15(r.delta);
    j["epsilon"] = round15(r.epsilon);
    if (r.best_witness) {
        const auto& w = *r.best_witness;
        j["witness"] = ojson{{"u", detail::coords15(w.u.coords)},
                             {"z", detail::coords15(w.z.coords)},
                             {"v", detail::coords15(w.v.coords)},
                             {"defect", round15(w.defect)},
                             {"separation", round15(w.separation)}};
    }
    return j;
}

inline ojson semi_sharp_to_json(const SemiSharpReport& r) {
    ojson j;
    j["property"] = "semi-sharp";
    j["verdict"] = r.verdict == SemiSharpVerdict::SemiSharpOnSamples ? "SemiSharpOnSamples"
                                                                     : "CounterexampleFound";
    j["points_checked"] = r.points_checked;
    if (r.witness) {
        j["witness"] = ojson{{"swept", detail::coords15(r.witness->swept.coords)},
                             {"first", detail::coords15(r.witness->first.coords)},
                             {"second", detail::coords15(r.witness->second.coords)}};
    }
    return j;
}

inline ojson gallery_report_to_json(const GalleryReport& r) {
    ojson j;
    auto& checks = j["checks"] = ojson::array();
    for (const auto& c : r.checks) {
        checks.push_back(ojson{{"instance", c.instance},
                               {"quantity", c.quantity},
                               {"expected", round15(c.expected)},
                               {"actual", round15(c.actual)},
                               {"tolerance", round15(c.tolerance)},
                               {"passed", c.passed}});
    }
    j["all_passed"] = r.all_passed;
    return j;
}

/// Trace CSV: one row per iterate; d_n is empty on the last row (no further
/// step exists) and e_half_n appears only on odd rows, where it equals
/// sigma(u_n, G).
inline std::string trace_to_csv(const IterationTrace& trace) {
    std::string out = "n";
    const std::size_t dim = trace.iterates.empty() ? 0 : trace.iterates.front().dim();
    for (std::size_t j = 0; j < dim; ++j) out += ",coord_" + std::to_string(j);
    out += ",d_n,e_half_n\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        out += std::to_string(n);
        for (double c : trace.iterates[n].coords) out += "," + format15(c);
        out += ",";
        if (n < trace.d.size()) out += format15(trace.d[n]);
        out += ",";
        if (n % 2 == 1 && n / 2 < trace.e.size()) out += format15(trace.e[n / 2]);
        out += "\n";
    }
    return out;
}

}  // namespace proxim
