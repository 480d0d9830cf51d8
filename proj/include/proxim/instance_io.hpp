#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "proxim/errors.hpp"
#include "proxim/gallery.hpp"
#include "proxim/gauge.hpp"
#include "proxim/maps.hpp"
#include "proxim/norm.hpp"
#include "proxim/point.hpp"
#include "proxim/sets.hpp"

namespace proxim {

using ojson = nlohmann::ordered_json;

/// A fully parsed problem instance plus the run defaults it carries. `echo`
/// holds the normalized document for report embedding; gallery-backed
/// instances carry probe pairs that the file schema has no key for.
struct InstanceConfig {
    std::string name;  // gallery name or file path
    SetDescriptor g;
    SetDescriptor h;
    std::optional<CyclicMapSpec> map;
    std::optional<Gauge> gauge;
    double tol = 1e-9;
    long max_iter = 100000;
    std::optional<Point> u0;
    double delta = 1e-3;
    double epsilon = 1e-2;
    long budget = 10000;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<Point, Point>> probe_pairs;
    ojson echo;
};

namespace detail {

inline void check_keys(const ojson& obj, const std::string& where,
                       std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw SchemaError(where + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw SchemaError("unknown key \"" + item.key() + "\" in " + where);
    }
}

inline double get_number(const ojson& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) throw SchemaError(where + " is missing \"" + key + "\"");
    if (!obj[key].is_number()) throw SchemaError(where + "." + key + " must be a number");
    return obj[key].get<double>();
}

inline std::vector<double> get_vector(const ojson& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw SchemaError(where + " must be a nonempty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw SchemaError(where + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

inline NormTag parse_norm(const ojson& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return NormTag::sup();
        throw SchemaError("norm must be a number >= 1 or \"inf\"");
    }
    if (!j.is_number()) throw SchemaError("norm must be a number >= 1 or \"inf\"");
    return NormTag::lp(j.get<double>());
}

inline SetDescriptor parse_set(const ojson& j, const std::string& where, NormTag norm) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw SchemaError(where + " must be an object with a \"type\" string");
    const std::string type = j["type"].get<std::string>();
    if (type == "interval") {
        check_keys(j, where, {"type", "lo", "hi"});
        return make_interval(get_number(j, where, "lo"), get_number(j, where, "hi"), norm);
    }
    if (type == "box" || type == "grid_box") {
        check_keys(j, where, {"type", "lo", "hi"});
        if (!j.contains("lo") || !j.contains("hi"))
            throw SchemaError(where + " needs \"lo\" and \"hi\" arrays");
        auto lo = get_vector(j["lo"], where + ".lo");
        auto hi = get_vector(j["hi"], where + ".hi");
        return type == "box" ? make_box(lo, hi, norm) : make_grid_box(lo, hi, norm);
    }
    if (type == "segment") {
        check_keys(j, where, {"type", "a", "b"});
        if (!j.contains("a") || !j.contains("b"))
            throw SchemaError(where + " needs \"a\" and \"b\" arrays");
        return make_segment(make_point(get_vector(j["a"], where + ".a"), norm),
                            make_point(get_vector(j["b"], where + ".b"), norm));
    }
    if (type == "cloud") {
        check_keys(j, where, {"type", "points"});
        if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
            throw SchemaError(where + " needs a nonempty \"points\" array");
        std::vector<Point> points;
        for (std::size_t i = 0; i < j["points"].size(); ++i)
            points.push_back(make_point(
                get_vector(j["points"][i], where + ".points[" + std::to_string(i) + "]"), norm));
        return make_cloud(std::move(points));
    }
    throw SchemaError(where + ".type \"" + type + "\" is not one of interval/box/grid_box/segment/cloud");
}

inline BranchRule parse_branch(const ojson& j, const std::string& where, NormTag norm) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw SchemaError(where + " must be an object with a \"type\" string");
    const std::string type = j["type"].get<std::string>();
    if (type == "constant") {
        check_keys(j, where, {"type", "value"});
        if (!j.contains("value")) throw SchemaError(where + " needs a \"value\" array");
        return BranchRule{ConstantRule{make_point(get_vector(j["value"], where + ".value"), norm)}};
    }
    if (type == "affine") {
        check_keys(j, where, {"type", "matrix", "offset"});
        if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
            throw SchemaError(where + " needs a nonempty \"matrix\" array of rows");
        AffineRule rule;
        for (std::size_t i = 0; i < j["matrix"].size(); ++i)
            rule.matrix.push_back(
                get_vector(j["matrix"][i], where + ".matrix[" + std::to_string(i) + "]"));
        if (!j.contains("offset")) throw SchemaError(where + " needs an \"offset\" array");
        rule.offset = get_vector(j["offset"], where + ".offset");
        return BranchRule{std::move(rule)};
    }
    if (type == "componentwise") {
        check_keys(j, where, {"type", "terms"});
        if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
            throw SchemaError(where + " needs a nonempty \"terms\" array");
        ComponentwiseRule rule;
        for (std::size_t i = 0; i < j["terms"].size(); ++i) {
            const auto& t = j["terms"][i];
            const std::string tw = where + ".terms[" + std::to_string(i) + "]";
            check_keys(t, tw, {"a", "b"});
            ComponentExpr e;
            if (t.contains("a")) e.a = get_number(t, tw, "a");
            if (t.contains("b")) e.b = get_number(t, tw, "b");
            rule.exprs.push_back(e);
        }
        return BranchRule{std::move(rule)};
    }
    if (type == "named") {
        check_keys(j, where, {"type", "name"});
        if (!j.contains("name") || !j["name"].is_string())
            throw SchemaError(where + " needs a \"name\" string");
        return BranchRule{NamedRule{j["name"].get<std::string>()}};
    }
    throw SchemaError(where + ".type \"" + type + "\" is not one of constant/affine/componentwise/named");
}

inline Gauge parse_gauge(const ojson& j) {
    if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
        throw SchemaError("gauge must be an object with a \"variant\" string");
    const std::string variant = j["variant"].get<std::string>();
    if (variant == "linear") {
        check_keys(j, "gauge", {"variant", "beta"});
        return make_linear_gauge(get_number(j, "gauge", "beta"));
    }
    if (variant == "affine-shift") {
        check_keys(j, "gauge", {"variant"});
        return make_affine_shift_gauge();
    }
    if (variant == "rational") {
        check_keys(j, "gauge", {"variant"});
        return make_rational_gauge();
    }
    if (variant == "tabulated") {
        check_keys(j, "gauge", {"variant", "s", "psi"});
        if (!j.contains("s") || !j.contains("psi"))
            throw SchemaError("tabulated gauge needs \"s\" and \"psi\" arrays");
        return make_tabulated_gauge(get_vector(j["s"], "gauge.s"), get_vector(j["psi"], "gauge.psi"));
    }
    throw SchemaError("gauge.variant \"" + variant +
                      "\" is not one of linear/affine-shift/rational/tabulated");
}

}  // namespace detail

/// Parse an instance document. Every object is validated against a key
/// whitelist before any computation; unknown keys are rejected.
inline InstanceConfig parse_instance(const ojson& doc, const std::string& name) {
    detail::check_keys(doc, "instance",
                       {"norm", "G", "H", "map", "gauge", "solver", "falsifier"});
    if (!doc.contains("norm")) throw SchemaError("instance is missing \"norm\"");
    if (!doc.contains("G") || !doc.contains("H"))
        throw SchemaError("instance is missing \"G\" or \"H\"");

    InstanceConfig cfg;
    cfg.name = name;
    const NormTag norm = detail::parse_norm(doc["norm"]);
    cfg.g = detail::parse_set(doc["G"], "G", norm);
    cfg.h = detail::parse_set(doc["H"], "H", norm);

    if (doc.contains("map")) {
        detail::check_keys(doc["map"], "map", {"forward", "backward"});
        if (!doc["map"].contains("forward") || !doc["map"].contains("backward"))
            throw SchemaError("map needs \"forward\" and \"backward\" branches");
        cfg.map = make_cyclic_map(detail::parse_branch(doc["map"]["forward"], "map.forward", norm),
                                  detail::parse_branch(doc["map"]["backward"], "map.backward", norm),
                                  cfg.g, cfg.h);
    }
    if (doc.contains("gauge")) cfg.gauge = detail::parse_gauge(doc["gauge"]);
    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        detail::check_keys(s, "solver", {"tol", "max_iter", "u0"});
        if (s.contains("tol")) cfg.tol = detail::get_number(s, "solver", "tol");
        if (s.contains("max_iter")) {
            if (!s["max_iter"].is_number_integer())
                throw SchemaError("solver.max_iter must be an integer");
            cfg.max_iter = s["max_iter"].get<long>();
        }
        if (s.contains("u0")) cfg.u0 = make_point(detail::get_vector(s["u0"], "solver.u0"), norm);
    }
    if (doc.contains("falsifier")) {
        const auto& f = doc["falsifier"];
        detail::check_keys(f, "falsifier", {"delta", "epsilon", "budget", "seed"});
        if (f.contains("delta")) cfg.delta = detail::get_number(f, "falsifier", "delta");
        if (f.contains("epsilon")) cfg.epsilon = detail::get_number(f, "falsifier", "epsilon");
        if (f.contains("budget")) {
            if (!f["budget"].is_number_integer())
                throw SchemaError("falsifier.budget must be an integer");
            cfg.budget = f["budget"].get<long>();
        }
        if (f.contains("seed")) {
            if (!f["seed"].is_number_unsigned())
                throw SchemaError("falsifier.seed must be a nonnegative integer");
            cfg.seed = f["seed"].get<std::uint64_t>();
        }
    }
    cfg.echo = doc;
    return cfg;
}

/// Parse instance JSON text; syntax errors carry 1-based line/column.
inline InstanceConfig parse_instance_text(const std::string& text, const std::string& name) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports a byte offset; convert to line/column.
        std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        if (offset > text.size()) offset = text.size();
        int line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SchemaError("invalid JSON: " + std::string(e.what()), line, column);
    }
    return parse_instance(doc, name);
}

inline InstanceConfig load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

namespace detail {

inline ojson norm_to_json(NormTag norm) {
    if (norm.is_sup()) return ojson("inf");
    return ojson(norm.p);
}

inline ojson set_to_json(const SetDescriptor& S) {
    ojson j;
    if (const auto* iv = std::get_if<Interval>(&S.shape)) {
        j["type"] = "interval";
        j["lo"] = iv->lo;
        j["hi"] = iv->hi;
    } else if (const auto* box = std::get_if<Box>(&S.shape)) {
        j["type"] = "box";
        j["lo"] = box->lo;
        j["hi"] = box->hi;
    } else if (const auto* gb = std::get_if<GridBox>(&S.shape)) {
        j["type"] = "grid_box";
        j["lo"] = gb->lo;
        j["hi"] = gb->hi;
    } else if (const auto* seg = std::get_if<Segment>(&S.shape)) {
        j["type"] = "segment";
        j["a"] = seg->a.coords;
        j["b"] = seg->b.coords;
    } else {
        const auto& cloud = std::get<FiniteCloud>(S.shape);
        j["type"] = "cloud";
        auto& pts = j["points"] = ojson::array();
        for (const auto& p : cloud.points) pts.push_back(p.coords);
    }
    return j;
}

inline ojson branch_to_json(const BranchRule& branch) {
    ojson j;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ConstantRule>) {
                j["type"] = "constant";
                j["value"] = r.value.coords;
            } else if constexpr (std::is_same_v<T, AffineRule>) {
                j["type"] = "affine";
                j["matrix"] = r.matrix;
                j["offset"] = r.offset;
            } else if constexpr (std::is_same_v<T, ComponentwiseRule>) {
                j["type"] = "componentwise";
                auto& terms = j["terms"] = ojson::array();
                for (const auto& e : r.exprs) terms.push_back(ojson{{"a", e.a}, {"b", e.b}});
            } else {
                j["type"] = "named";
                j["name"] = r.name;
            }
        },
        branch.rule);
    return j;
}

inline ojson gauge_to_json(const Gauge& gauge) {
    ojson j;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, LinearGauge>) {
                j["variant"] = "linear";
                j["beta"] = g.beta;
            } else if constexpr (std::is_same_v<T, AffineShiftGauge>) {
                j["variant"] = "affine-shift";
            } else if constexpr (std::is_same_v<T, RationalGauge>) {
                j["variant"] = "rational";
            } else {
                j["variant"] = "tabulated";
                j["s"] = g.s;
                j["psi"] = g.psi;
            }
        },
        gauge.variant);
    return j;
}

}  // namespace detail

/// Export a gallery instance to the instance-file schema. Loading the export
/// reproduces the same sets, map, gauge, and solver defaults (probe pairs are
/// a gallery-only attachment with no file key).
inline ojson instance_to_json(const GalleryInstance& inst) {
    ojson doc;
    doc["norm"] = detail::norm_to_json(inst.g.norm);
    doc["G"] = detail::set_to_json(inst.g);
    doc["H"] = detail::set_to_json(inst.h);
    if (inst.map) {
        doc["map"] = ojson{{"forward", detail::branch_to_json(inst.map->forward)},
                           {"backward", detail::branch_to_json(inst.map->backward)}};
    }
    if (inst.gauge) doc["gauge"] = detail::gauge_to_json(*inst.gauge);
    ojson solver;
    solver["tol"] = inst.solver_tol;
    solver["max_iter"] = inst.solver_max_iter;
    if (inst.start) solver["u0"] = inst.start->coords;
    doc["solver"] = std::move(solver);
    ojson falsifier;
    falsifier["delta"] = inst.falsify_delta;
    falsifier["epsilon"] = inst.suc_epsilon;
    falsifier["budget"] = inst.falsify_budget;
    doc["falsifier"] = std::move(falsifier);
    return doc;
}

/// Build the run configuration of a gallery instance without going through
/// the file schema (keeps probe pairs and per-property thresholds).
inline InstanceConfig gallery_config(const GalleryInstance& inst) {
    InstanceConfig cfg;
    cfg.name = inst.name;
    cfg.g = inst.g;
    cfg.h = inst.h;
    cfg.map = inst.map;
    cfg.gauge = inst.gauge;
    cfg.tol = inst.solver_tol;
    cfg.max_iter = inst.solver_max_iter;
    cfg.u0 = inst.start;
    cfg.delta = inst.falsify_delta;
    cfg.epsilon = inst.suc_epsilon;
    cfg.budget = inst.falsify_budget;
    cfg.probe_pairs = inst.probe_pairs;
    cfg.echo = ojson{{"gallery", inst.name}};
    return cfg;
}

}  // namespace proxim
