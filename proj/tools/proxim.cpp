#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "proxim/proxim.hpp"

namespace {

using proxim::ojson;

std::chrono::steady_clock::time_point g_start;

double elapsed_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           const std::optional<std::uint64_t>& file_seed) {
    if (flag_seed) return *flag_seed;
    if (file_seed) return *file_seed;
    if (const char* env = std::getenv("PROXIM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw proxim::ConfigError("PROXIM_SEED must be a nonnegative integer");
        return v;
    }
    return 42;
}

bool is_gallery_name(const std::string& arg) {
    for (const auto& name : proxim::gallery_names())
        if (arg == name) return true;
    return false;
}

/// Gallery names resolve first, then the filesystem.
proxim::InstanceConfig resolve_instance(const std::string& arg, int grid) {
    if (is_gallery_name(arg)) return proxim::gallery_config(proxim::load(arg, grid));
    if (grid > 0) throw proxim::ConfigError("--grid applies to gallery instances only");
    return proxim::load_instance_file(arg);
}

void emit_report(ojson& doc, const std::string& out_path) {
    proxim::finish_report(doc, elapsed_seconds());
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        proxim::write_text_atomic(out_path, text);
}

struct CommonFlags {
    std::string instance;
    std::string out_path;
    int grid = 0;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("instance", flags.instance, "gallery name or instance JSON path")->required();
    cmd->add_option("--out", flags.out_path, "write the JSON report here (default: stdout)");
    cmd->add_option("--grid", flags.grid, "discretization override for gridded gallery instances")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "sampling seed (overrides PROXIM_SEED and instance files)");
}

int run_solve(const CommonFlags& flags, std::optional<double> tol, std::optional<long> max_iter,
              const std::vector<double>& u0_flag, bool fixed_point,
              const std::string& trace_csv) {
    auto cfg = resolve_instance(flags.instance, flags.grid);
    if (!cfg.map) throw proxim::ConfigError("instance has no map; nothing to solve");
    const double use_tol = tol ? *tol : cfg.tol;
    const long use_max_iter = max_iter ? *max_iter : cfg.max_iter;
    std::optional<proxim::Point> u0 = cfg.u0;
    if (!u0_flag.empty()) u0 = proxim::make_point(u0_flag, cfg.g.norm);
    if (!u0) throw proxim::ConfigError("no start point: pass --u0 or set solver.u0");

    const auto result = fixed_point
                            ? proxim::solve_fixed_point(*cfg.map, *u0, use_tol, use_max_iter)
                            : proxim::solve_best_approximation(*cfg.map, *u0, use_tol, use_max_iter);
    const double sigma_gh = proxim::set_distance(cfg.g, cfg.h).value;

    if (!trace_csv.empty())
        proxim::write_text_atomic(trace_csv, proxim::trace_to_csv(result.trace));

    ojson doc = proxim::report_skeleton("solve", cfg.echo, resolve_seed(flags.seed, cfg.seed));
    doc["results"] = proxim::solve_result_to_json(result, sigma_gh);
    emit_report(doc, flags.out_path);

    switch (result.trace.stop_reason) {
        case proxim::StopReason::Converged: return 0;
        case proxim::StopReason::MaxIterations: return 2;
        case proxim::StopReason::Diverged: return 3;
    }
    return 2;
}

int run_verify(const CommonFlags& flags, const std::string& class_name,
               std::optional<double> beta, long samples, bool uniform) {
    auto cfg = resolve_instance(flags.instance, flags.grid);
    if (!cfg.map) throw proxim::ConfigError("instance has no map; nothing to verify");
    const auto cls = proxim::class_from_name(class_name);
    if (!cls)
        throw proxim::ConfigError(
            "unknown class '" + class_name +
            "' (expected cyclic, relatively-nonexpansive, cyclic-contraction, almost-cyclic, "
            "cyclic-psi, or almost-cyclic-psi)");

    proxim::VerifyOptions opt;
    opt.n_samples = samples;
    opt.seed = resolve_seed(flags.seed, cfg.seed);
    opt.uniform = uniform;
    opt.probe_pairs = cfg.probe_pairs;
    const auto report = proxim::verify_class(*cfg.map, *cls, beta, cfg.gauge, opt);

    ojson doc = proxim::report_skeleton("verify", cfg.echo, opt.seed);
    doc["results"] = proxim::verification_to_json(report);
    emit_report(doc, flags.out_path);
    return report.verdict == proxim::VerifyVerdict::HoldsOnSamples ? 0 : 1;
}

int run_props(const CommonFlags& flags, const std::string& property, std::optional<double> delta,
              std::optional<double> epsilon, std::optional<long> budget, bool uniform) {
    auto cfg = resolve_instance(flags.instance, flags.grid);
    const std::uint64_t seed = resolve_seed(flags.seed, cfg.seed);
    ojson doc = proxim::report_skeleton("props", cfg.echo, seed);

    int exit_code = 0;
    if (property == "uc" || property == "strongly-uc") {
        proxim::FalsifyOptions opt;
        opt.delta = delta ? *delta : cfg.delta;
        opt.epsilon = epsilon ? *epsilon : cfg.epsilon;
        opt.budget = budget ? *budget : cfg.budget;
        opt.seed = seed;
        opt.uniform = uniform;
        const auto report = property == "uc" ? proxim::falsify_uc(cfg.g, cfg.h, opt)
                                             : proxim::falsify_strongly_uc(cfg.g, cfg.h, opt);
        doc["results"] = proxim::property_report_to_json(report, property);
        exit_code = report.verdict == proxim::PropertyVerdict::NoViolationFound ? 0 : 1;
    } else if (property == "semi-sharp") {
        const auto report = proxim::check_semi_sharp_proximal(cfg.g, cfg.h,
                                                              epsilon ? *epsilon : 1e-2);
        doc["results"] = proxim::semi_sharp_to_json(report);
        exit_code =
            report.verdict == proxim::SemiSharpVerdict::SemiSharpOnSamples ? 0 : 1;
    } else {
        throw proxim::ConfigError("unknown property '" + property +
                                  "' (expected uc, strongly-uc, or semi-sharp)");
    }
    emit_report(doc, flags.out_path);
    return exit_code;
}

int run_gallery_list() {
    for (const auto& name : proxim::gallery_names()) {
        const auto inst = proxim::load(name);
        std::cout << name << "  -  " << inst.summary << "\n";
    }
    return 0;
}

int run_gallery_export(const std::string& name, int grid, const std::string& out_path) {
    const auto inst = proxim::load(name, grid);
    const std::string text = proxim::instance_to_json(inst).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        proxim::write_text_atomic(out_path, text);
    return 0;
}

int run_gallery_run_all(int grid, const std::string& out_path,
                        std::optional<std::uint64_t> seed) {
    const auto report = proxim::run_all(grid);
    for (const auto& c : report.checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.instance << "/" << c.quantity
                  << "  expected " << proxim::format15(c.expected) << " +/- "
                  << proxim::format15(c.tolerance) << ", got " << proxim::format15(c.actual)
                  << "\n";
    }
    if (!out_path.empty()) {
        ojson doc = proxim::report_skeleton("gallery-run-all", ojson{{"gallery", "all"}},
                                            resolve_seed(seed, std::nullopt));
        doc["results"] = proxim::gallery_report_to_json(report);
        emit_report(doc, out_path);
    }
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    g_start = std::chrono::steady_clock::now();

    CLI::App app{"best-approximation and best-proximity-point toolkit for cyclic maps"};
    app.require_subcommand(1);

    CommonFlags solve_flags;
    std::optional<double> solve_tol;
    std::optional<long> solve_max_iter;
    std::vector<double> solve_u0;
    bool solve_fixed_point = false;
    std::string solve_trace_csv;
    auto* solve = app.add_subcommand("solve", "run the Picard iteration solver");
    add_common(solve, solve_flags);
    solve->add_option("--tol", solve_tol, "convergence tolerance (default 1e-9)");
    solve->add_option("--max-iter", solve_max_iter, "iteration cap (default 100000)");
    solve->add_option("--u0", solve_u0, "start point coordinates")->delimiter(',');
    solve->add_flag("--fixed-point", solve_fixed_point,
                    "iterate to a fixed point (start must lie in both sets)");
    solve->add_option("--trace-csv", solve_trace_csv, "write the iterate trace as CSV here");

    CommonFlags verify_flags;
    std::string verify_class_name;
    std::optional<double> verify_beta;
    long verify_samples = 10000;
    bool verify_uniform = false;
    auto* verify = app.add_subcommand("verify", "check a contraction-class inequality on samples");
    add_common(verify, verify_flags);
    verify->add_option("--class", verify_class_name, "contraction class to check")->required();
    verify->add_option("--beta", verify_beta, "damping factor for the contraction classes");
    verify->add_option("--samples", verify_samples, "sample pair count")->capture_default_str();
    verify->add_flag("--uniform", verify_uniform,
                     "seeded uniform sampling instead of low-discrepancy");

    CommonFlags props_flags;
    std::string props_property;
    std::optional<double> props_delta;
    std::optional<double> props_epsilon;
    std::optional<long> props_budget;
    bool props_uniform = false;
    auto* props = app.add_subcommand("props", "falsify or check metric properties of the set pair");
    add_common(props, props_flags);
    props->add_option("--property", props_property, "uc, strongly-uc, or semi-sharp")->required();
    props->add_option("--delta", props_delta, "defect threshold (default 1e-3)");
    props->add_option("--epsilon", props_epsilon,
                      "separation threshold; semi-sharp resolution (default 1e-2)");
    props->add_option("--budget", props_budget, "defect evaluation budget (default 10000)");
    props->add_flag("--uniform", props_uniform,
                    "seeded uniform sampling instead of low-discrepancy");

    auto* gallery = app.add_subcommand("gallery", "built-in worked examples");
    gallery->require_subcommand(1);
    gallery->add_subcommand("list", "list instance names");
    std::string export_name, export_out;
    int export_grid = 0;
    auto* gexport = gallery->add_subcommand("export", "write an instance as JSON");
    gexport->add_option("name", export_name, "gallery instance name")->required();
    gexport->add_option("--out", export_out, "output path (default: stdout)");
    gexport->add_option("--grid", export_grid, "discretization override")
        ->check(CLI::PositiveNumber);
    int runall_grid = 0;
    std::string runall_out;
    std::optional<std::uint64_t> runall_seed;
    auto* grunall = gallery->add_subcommand("run-all", "evaluate every expected quantity");
    grunall->add_option("--grid", runall_grid, "discretization override")
        ->check(CLI::PositiveNumber);
    grunall->add_option("--out", runall_out, "write the JSON report here");
    grunall->add_option("--seed", runall_seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (solve->parsed())
            return run_solve(solve_flags, solve_tol, solve_max_iter, solve_u0, solve_fixed_point,
                             solve_trace_csv);
        if (verify->parsed())
            return run_verify(verify_flags, verify_class_name, verify_beta, verify_samples,
                              verify_uniform);
        if (props->parsed())
            return run_props(props_flags, props_property, props_delta, props_epsilon, props_budget,
                             props_uniform);
        if (gallery->parsed()) {
            if (gallery->get_subcommand("list")->parsed()) return run_gallery_list();
            if (gallery->get_subcommand("export")->parsed())
                return run_gallery_export(export_name, export_grid, export_out);
            if (gallery->get_subcommand("run-all")->parsed())
                return run_gallery_run_all(runall_grid, runall_out, runall_seed);
        }
    } catch (const proxim::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
    return 64;
}
