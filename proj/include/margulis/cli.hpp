#pragma once

// Command-line surface. Subcommands:
//   construct   --n N [--config F] [--out DIR]   full pipeline + certificate
//   check       {schottky|transversal|propc|orderings} [--depth D]
//   alpha-table --max-len L [--n N]               CSV of alpha per word class
//   plot        --n N                              SVG figure + angle CSV
// Exit codes: 0 pass, 1 mathematical failure (witness in the report),
// 2 usage or configuration error. MARGULIS_TOL overrides the tolerance.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "margulis/report.hpp"

namespace margulis {

namespace detail {

inline GroupConfig load_config(const std::string& path) {
    GroupConfig config;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        config = GroupConfig::from_json(j);
    }
    config.apply_env_overrides();
    config.validate();
    set_default_tolerance(config.tolerance);
    return config;
}

inline std::filesystem::path ensure_outdir(const std::string& out) {
    const std::filesystem::path dir = out.empty() ? std::filesystem::path(".")
                                                  : std::filesystem::path(out);
    std::filesystem::create_directories(dir);
    return dir;
}

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

}  // namespace detail

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

inline int cmd_construct(const GroupConfig& config, int n, const std::string& out) {
    const detail::Stopwatch timer;
    const auto dir = detail::ensure_outdir(out);
    Report report;
    report.command = "construct --n " + std::to_string(n);
    report.config_echo = config.to_json();

    PipelineOptions opts;
    opts.seed_t = config.seed_interpolation;
    opts.propc_depth_floor = config.depth_propc;
    opts.schottky_samples = config.schottky_samples;
    opts.schottky.margin = config.schottky_margin;

    int exit_code = 0;
    try {
        const PipelineResult r =
            run_pipeline(config.generators().g, config.generators().h, n, opts, config.tolerance);
        report.result["schottky"] = to_json(r.schottky_check);
        report.result["property_c"] = to_json(r.propc);
        report.result["h_inverted"] = r.h_inverted;
        report.result["deformation"] = to_json(r.deformation);
        report.result["certificate"] = to_json(r.certificate);

        std::vector<AlphaRow> rows;
        const AffineIsometry gamma = r.deformation.gamma();
        const AffineIsometry eta = r.deformation.eta();
        for (const Word& w : cyclically_reduced_classes(n)) {
            rows.push_back({w.str(), static_cast<int>(w.size()),
                            alpha_of_word(w, gamma, eta, config.tolerance)});
        }
        rows.push_back({r.certificate.violator_word.str(),
                        static_cast<int>(r.certificate.violator_word.size()),
                        r.certificate.violator_alpha});
        write_alpha_csv((dir / "alpha_table.csv").string(), rows);

        std::cout << "construct n=" << n << ": PASS (min alpha "
                  << r.certificate.min_alpha_overall() << ", alpha(" <<
                  r.certificate.violator_word.str() << ") = " << r.certificate.violator_alpha
                  << ")\n";
    } catch (const VerificationFailed& e) {
        report.result["error"] = {{"kind", "VerificationFailed"},
                                  {"word", e.word.str()},
                                  {"alpha", e.alpha},
                                  {"message", e.what()}};
        std::cout << "construct n=" << n << ": FAIL (" << e.what() << ", word " << e.word.str()
                  << ", alpha " << e.alpha << ")\n";
        exit_code = 1;
    } catch (const Error& e) {
        report.result["error"] = {{"kind", "Infeasible"}, {"message", e.what()}};
        std::cout << "construct n=" << n << ": FAIL (" << e.what() << ")\n";
        exit_code = 1;
    }
    report.wall_time_ms = timer.ms();
    report.write((dir / "report.json").string());
    return exit_code;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

inline int cmd_check(const GroupConfig& config, const std::string& which, int depth,
                     const std::string& out) {
    const detail::Stopwatch timer;
    const auto dir = detail::ensure_outdir(out);
    Report report;
    report.command = "check " + which + " --depth " + std::to_string(depth);
    report.config_echo = config.to_json();

    int exit_code = 0;
    try {
        const GeneratorPair raw = config.generators();
        if (which == "transversal") {
            const TransversalResult tr = is_transversal(raw.g, raw.h, config.tolerance);
            report.result["transversal"] = tr.transversal;
            report.result["h_inverted"] = tr.inverted;
            if (!tr.transversal) exit_code = 1;
        } else {
            const TransversalResult tr = is_transversal(raw.g, raw.h, config.tolerance);
            if (!tr.transversal) throw Infeasible("generators are not transversal");
            const SchottkySystem sys =
                build_schottky_system(tr.pair, {config.schottky_margin});
            if (which == "schottky") {
                const SchottkyCheck check =
                    verify_schottky(sys, tr.pair, config.schottky_samples, config.tolerance);
                report.result["schottky"] = to_json(check);
                if (!check.ok) exit_code = 1;
            } else if (which == "propc") {
                const PropertyCReport r =
                    check_property_c(tr.pair, depth, 64, config.tolerance);
                report.result["property_c"] = to_json(r);
                if (!r.ok) exit_code = 1;
            } else if (which == "orderings") {
                const OrderingReport r =
                    check_ordering_lemmas(tr.pair, sys, depth, config.tolerance);
                report.result["orderings"] = to_json(r);
                if (!r.ok) exit_code = 1;
            } else {
                throw ConfigError("unknown check: " + which);
            }
        }
        std::cout << "check " << which << ": " << (exit_code == 0 ? "PASS" : "FAIL") << "\n";
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        report.result["error"] = {{"kind", "Error"}, {"message", e.what()}};
        std::cout << "check " << which << ": FAIL (" << e.what() << ")\n";
        exit_code = 1;
    }
    report.wall_time_ms = timer.ms();
    report.write((dir / "report.json").string());
    return exit_code;
}

// ---------------------------------------------------------------------------
// alpha-table
// ---------------------------------------------------------------------------

/// Tabulates alpha over all deduplicated cyclically reduced words up to
/// max_len for the deformation constructed at the given n.
inline int cmd_alpha_table(const GroupConfig& config, int max_len, int n,
                           const std::string& out) {
    const detail::Stopwatch timer;
    const auto dir = detail::ensure_outdir(out);
    Report report;
    report.command = "alpha-table --max-len " + std::to_string(max_len) + " --n " +
                     std::to_string(n);
    report.config_echo = config.to_json();

    PipelineOptions opts;
    opts.seed_t = config.seed_interpolation;
    opts.propc_depth_floor = config.depth_propc;
    opts.schottky_samples = config.schottky_samples;
    opts.schottky.margin = config.schottky_margin;

    int exit_code = 0;
    try {
        const PipelineResult r =
            run_pipeline(config.generators().g, config.generators().h, n, opts, config.tolerance);
        std::vector<AlphaRow> rows;
        const AffineIsometry gamma = r.deformation.gamma();
        const AffineIsometry eta = r.deformation.eta();
        for (const Word& w : cyclically_reduced_classes(max_len)) {
            rows.push_back({w.str(), static_cast<int>(w.size()),
                            alpha_of_word(w, gamma, eta, config.tolerance)});
        }
        write_alpha_csv((dir / "alpha_table.csv").string(), rows);
        report.result["rows"] = rows.size();
        report.result["deformation"] = to_json(r.deformation);
        std::cout << "alpha-table: wrote " << rows.size() << " rows\n";
    } catch (const Error& e) {
        report.result["error"] = {{"kind", "Error"}, {"message", e.what()}};
        std::cout << "alpha-table: FAIL (" << e.what() << ")\n";
        exit_code = 1;
    }
    report.wall_time_ms = timer.ms();
    report.write((dir / "report.json").string());
    return exit_code;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

inline int cmd_plot(const GroupConfig& config, int n, const std::string& out) {
    const detail::Stopwatch timer;
    const auto dir = detail::ensure_outdir(out);
    Report report;
    report.command = "plot --n " + std::to_string(n);
    report.config_echo = config.to_json();

    int exit_code = 0;
    try {
        const GeneratorPair raw = config.generators();
        const TransversalResult tr = is_transversal(raw.g, raw.h, config.tolerance);
        if (!tr.transversal) throw Infeasible("generators are not transversal");
        const GeneratorPair& pair = tr.pair;
        const SchottkySystem sys = build_schottky_system(pair, {config.schottky_margin});
        const UIntervals u = build_U_intervals(sys, pair, n, config.tolerance);
        const SeedReport seed =
            seed_vector(sys, pair, n, config.seed_interpolation, config.tolerance);

        Figure fig;
        fig.arcs = {{"arc-agm", "Ag-", sys.Agm, "#c62828", 260},
                    {"arc-agp", "Ag+", sys.Agp, "#c62828", 260},
                    {"arc-ahm", "Ah-", sys.Ahm, "#1565c0", 260},
                    {"arc-ahp", "Ah+", sys.Ahp, "#1565c0", 260},
                    {"arc-uminus", "U-", u.uminus, "#2e7d32", 238},
                    {"arc-uplusn", "Un+", u.uplus_n, "#6a1b9a", 224}};
        std::vector<AngleRow> angles;
        for (const FigureArc& a : fig.arcs) {
            angles.push_back({a.id + "-start", a.arc.start().theta});
            angles.push_back({a.id + "-end", a.arc.end().theta});
        }
        for (int i = 0; i <= n; ++i) {
            const Word w = detail::g_h_power(i);
            const Vec3 xp =
                spectral_data(evaluate_linear(w, pair.g, pair.h), config.tolerance).xplus;
            const double theta = Ray::of_vector(xp).theta;
            const std::string label = (i == 0) ? "x+(g)" : "x+(gh^" + std::to_string(i) + ")";
            fig.rays.push_back({"ray-xplus-gh-" + std::to_string(i), label, theta});
            angles.push_back({"xplus_gh_" + std::to_string(i), theta});
        }
        const double seed_theta = Ray::of_vector(seed.seed).theta;
        fig.rays.push_back({"ray-seed", "seed", seed_theta});
        angles.push_back({"seed", seed_theta});
        fig.has_wedge = true;
        fig.wedge_from = Ray::of_vector(u.xplus_gh_nm1).theta;
        fig.wedge_to =
            Ray::of_vector(
                spectral_data(evaluate_linear(detail::g_h_power(n), pair.g, pair.h),
                              config.tolerance)
                    .xplus)
                .theta;

        std::ofstream svg(dir / "figure.svg");
        if (!svg) throw Error("cannot write SVG");
        svg << render_svg(fig);
        write_angles_csv((dir / "angles.csv").string(), angles);
        report.result["files"] = {"figure.svg", "angles.csv"};
        std::cout << "plot: wrote figure.svg and angles.csv\n";
    } catch (const Error& e) {
        report.result["error"] = {{"kind", "Error"}, {"message", e.what()}};
        std::cout << "plot: FAIL (" << e.what() << ")\n";
        exit_code = 1;
    }
    report.wall_time_ms = timer.ms();
    report.write((dir / "report.json").string());
    return exit_code;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Margulis invariants of affine Schottky deformations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "JSON config file")->capture_default_str();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* construct = app.add_subcommand("construct", "build and verify a deformation");
    int construct_n = 1;
    construct->add_option("--n", construct_n, "word-length bound")->required();

    auto* check = app.add_subcommand("check", "run a single verifier");
    std::string which;
    int depth = 5;
    check->add_option("which", which, "schottky|transversal|propc|orderings")->required();
    check->add_option("--depth", depth, "enumeration depth");

    auto* table = app.add_subcommand("alpha-table", "tabulate alpha over word classes");
    int max_len = 4;
    int table_n = 3;
    table->add_option("--max-len", max_len, "maximum word length")->required();
    table->add_option("--n", table_n, "construction parameter n");

    auto* plot = app.add_subcommand("plot", "emit the lightcone figure");
    int plot_n = 3;
    plot->add_option("--n", plot_n, "construction parameter n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const GroupConfig config = detail::load_config(config_path);
        if (construct->parsed()) {
            if (construct_n < 1) throw ConfigError("--n must be >= 1");
            return cmd_construct(config, construct_n, out_dir);
        }
        if (check->parsed()) {
            if (which != "schottky" && which != "transversal" && which != "propc" &&
                which != "orderings") {
                throw ConfigError("unknown check: " + which);
            }
            return cmd_check(config, which, depth, out_dir);
        }
        if (table->parsed()) {
            if (max_len < 1 || table_n < 1) throw ConfigError("lengths must be >= 1");
            return cmd_alpha_table(config, max_len, table_n, out_dir);
        }
        if (plot->parsed()) {
            if (plot_n < 1) throw ConfigError("--n must be >= 1");
            return cmd_plot(config, plot_n, out_dir);
        }
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const LambdaOutOfRange& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace margulis
