// End-to-end walkthrough of the app layer: write a simulation spec, generate
// a small synthetic study, analyze it into CSV reports, and print the
// rendered report text. Everything happens in a temporary directory.

#include <cstdio>
#include <filesystem>

#include "plvkit/app/commands.hpp"
#include "plvkit/app/config.hpp"
#include "plvkit/io.hpp"

int main() {
    namespace fs = std::filesystem;
    using namespace plvkit;

    const fs::path root = fs::temp_directory_path() / "plvkit_study_demo";
    fs::remove_all(root);
    ensure_dir(root);

    // Two subjects, two imagery classes plus rest. One occipital-prefrontal
    // channel pair is strongly locked during task trials and nearly unlocked
    // at rest, so the V-P contrast should surface in the region report.
    write_file(root / "study.ini",
               "[study]\n"
               "subjects = 2\n"
               "trials_per_class = 12\n"
               "classes = water,yes\n"
               "rest_class = rest\n"
               "paradigm = visual_imagery\n"
               "seed = 42\n"
               "\n[signal]\n"
               "channels = default64\n"
               "sampling_rate = 250\n"
               "epoch_seconds = 2\n"
               "gap_seconds = 0.2\n"
               "noise_sigma = 0.5\n"
               "carrier_hz = 10\n"
               "band = alpha,8,13\n"
               "\n[coupling.task]\n"
               "pair = O1,Fp1,6\n"
               "\n[coupling.rest]\n"
               "pair = O1,Fp1,0.3\n");

    const app::SimulateSpec spec = app::load_simulate_spec(root / "study.ini");
    const app::SimulateOutputs sim = app::run_simulate(spec, root / "study", 1);
    std::printf("simulated %zu data files\n", sim.data_files.size());

    const app::RunConfig cfg = app::load_run_config(sim.analyze_config);
    const app::AnalyzeOutputs ana = app::run_analyze(cfg, 1);
    std::printf("class table:   %s\n", ana.class_table_csv.string().c_str());
    std::printf("region report: %s\n\n", ana.region_report_csv.string().c_str());

    std::printf("%s", app::render_report_text(ana.class_table_csv.parent_path()).c_str());

    fs::remove_all(root);
    return 0;
}
