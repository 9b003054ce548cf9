#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plvkit/app/config.hpp"
#include "plvkit/app/report.hpp"
#include "plvkit/app/study.hpp"
#include "plvkit/errors.hpp"

namespace plvkit::app {

// When set, overrides the output directory of both simulate and analyze.
inline constexpr const char* out_dir_env = "PLVKIT_OUT_DIR";

// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
// degeneracy.
inline int run(int argc, const char* const* argv) {
    CLI::App app{"Phase-locking EEG connectivity toolkit"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker thread count")->capture_default_str();

    std::string spec_path, out_dir, config_path, report_dir;
    CLI::App* sim = app.add_subcommand("simulate", "Generate a synthetic study with known coupling");
    sim->add_option("--spec", spec_path, "simulation spec (INI)")->required();
    sim->add_option("--out", out_dir, "output directory");
    CLI::App* ana = app.add_subcommand("analyze", "Compute connectivity tables from recordings");
    ana->add_option("--config", config_path, "analysis config (INI)")->required();
    CLI::App* rep = app.add_subcommand("report", "Print the tables of an analysis directory");
    rep->add_option("--dir", report_dir, "analysis output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const char* env_out = std::getenv(out_dir_env);
        if (sim->parsed()) {
            if (env_out) out_dir = env_out;
            if (out_dir.empty())
                throw config_error(std::string("no output directory: pass --out or set ") +
                                   out_dir_env);
            const SimulateOutputs res = run_simulate(load_simulate_spec(spec_path), out_dir, threads);
            std::cout << "wrote " << res.data_files.size() << " data files\n"
                      << "manifest: " << res.manifest.string() << "\n"
                      << "analysis config: " << res.analyze_config.string() << "\n";
        } else if (ana->parsed()) {
            RunConfig cfg = load_run_config(config_path);
            if (env_out) cfg.output_dir = env_out;
            const AnalyzeOutputs res = run_analyze(cfg, threads);
            std::cout << "class table: " << res.class_table_csv.string() << "\n"
                      << "region report: " << res.region_report_csv.string() << "\n";
        } else {
            std::cout << render_report_text(report_dir);
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const plvkit::error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace plvkit::app
