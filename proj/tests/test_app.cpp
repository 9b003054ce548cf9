#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "plvkit/app/commands.hpp"
#include "plvkit/app/config.hpp"
#include "plvkit/app/report.hpp"
#include "plvkit/app/study.hpp"
#include "plvkit/app/threading.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/io.hpp"

namespace fs = std::filesystem;
using namespace plvkit;

TEST_CASE("fixed-point formatting rounds half away from zero", "[format]") {
    CHECK(app::format_fixed(-5.4058, 3) == "-5.406");
    CHECK(app::format_fixed(5.4058, 3) == "5.406");
    CHECK(app::format_fixed(0.125, 2) == "0.13");
    CHECK(app::format_fixed(-0.125, 2) == "-0.13");
    CHECK(app::format_fixed(2.5, 0) == "3");
    CHECK(app::format_fixed(-2.5, 0) == "-3");
    CHECK(app::format_fixed(0.28, 2) == "0.28");
    CHECK(app::format_fixed(0.299999, 2) == "0.30");
    CHECK(app::format_fixed(1.0, 2) == "1.00");
    CHECK(app::format_fixed(0.0, 3) == "0.000");
}

TEST_CASE("formatting never prints negative zero", "[format]") {
    CHECK(app::format_fixed(-0.0004, 3) == "0.000");
    CHECK(app::format_fixed(-0.0, 2) == "0.00");
    CHECK(app::format_fixed(-1e-15, 4) == "0.0000");
}

TEST_CASE("p-value formatting floors tiny values to zeros", "[format]") {
    CHECK(app::format_p(0.05, 3) == "0.050");
    CHECK(app::format_p(0.001, 3) == "0.001");
    CHECK(app::format_p(0.0004, 3) == "0.000");
    CHECK(app::format_p(1e-17, 3) == "0.000");
    CHECK(app::format_p(1.0, 3) == "1.000");
    CHECK(app::format_p(0.07417990022744853, 3) == "0.074");
}

TEST_CASE("report filenames derive from the paradigm", "[report]") {
    CHECK(app::class_table_filename(Paradigm::imagined_speech) ==
          "imagined_speech_class_table.csv");
    CHECK(app::region_report_filename(Paradigm::visual_imagery) ==
          "visual_imagery_region_report.csv");
}

TEST_CASE("class table CSV lays out subjects, Avg. and Std. rows", "[report]") {
    ClassTable table;
    table.subject_ids = {"S1", "S2"};
    table.class_labels = {"water", "yes"};
    table.values = {{0.27, 0.31}, {0.29, 0.35}};
    table.avg = {0.28, 0.33};
    table.std_dev = {0.0141421356, 0.0282842712};
    const std::string csv = app::render_class_table_csv(table, 2);
    CHECK(csv ==
          "subject,water,yes\n"
          "S1,0.27,0.31\n"
          "S2,0.29,0.35\n"
          "Avg.,0.28,0.33\n"
          "Std.,0.01,0.03\n");
}

TEST_CASE("region report CSV prints one row per pair", "[report]") {
    std::vector<RegionPairResult> rows(1);
    rows[0].a = Region::B;
    rows[0].b = Region::V;
    rows[0].mean_task = 0.31456;
    rows[0].mean_rest = 0.27111;
    rows[0].t = -5.4058;
    rows[0].p = 0.0004;
    rows[0].df = 15;
    const std::string csv = app::render_region_report_csv(rows, 2, 3);
    CHECK(csv ==
          "pair,task_mean,rest_mean,t,p,df\n"
          "B-V,0.31,0.27,-5.406,0.000,15\n");
}

TEST_CASE("rendered report text aligns tables and flags significance", "[report]") {
    const fs::path dir = fs::temp_directory_path() / "plvkit_report_text";
    fs::remove_all(dir);
    ensure_dir(dir);

    ClassTable table;
    table.subject_ids = {"S1", "S2"};
    table.class_labels = {"water", "yes"};
    table.values = {{0.27, 0.31}, {0.29, 0.35}};
    table.avg = {0.28, 0.33};
    table.std_dev = {0.014, 0.028};
    write_file(dir / app::class_table_filename(Paradigm::imagined_speech),
               app::render_class_table_csv(table, 2));

    std::vector<RegionPairResult> rows(2);
    rows[0] = {Region::B, Region::V, 0.31, 0.27, -5.4058, 0.0004, 15};
    rows[1] = {Region::B, Region::A, 0.29, 0.28, 1.2, 0.25, 15};
    write_file(dir / app::region_report_filename(Paradigm::imagined_speech),
               app::render_region_report_csv(rows, 2, 3));

    const std::string text = app::render_report_text(dir);
    CHECK(text.find("== imagined_speech class table ==") != std::string::npos);
    CHECK(text.find("== imagined_speech region report ==") != std::string::npos);
    CHECK(text.find("B-V") != std::string::npos);
    CHECK(text.find("*") != std::string::npos);        // the p = 0.000 row is starred
    CHECK(text.find("1.200") != std::string::npos);    // insignificant row present...
    CHECK(text.find("0.250 ") != std::string::npos);   // ...without a star after its p
    CHECK(text.find("* : p < 0.05") != std::string::npos);

    // Twice in a row gives identical text.
    CHECK(app::render_report_text(dir) == text);

    fs::remove_all(dir);
    CHECK_THROWS_AS(app::render_report_text(dir), data_error);
}

TEST_CASE("simulate spec parses a full INI", "[config]") {
    const std::string text =
        "[study]\n"
        "subjects = 3\n"
        "trials_per_class = 10\n"
        "classes = water,yes\n"
        "rest_class = baseline\n"
        "paradigm = visual_imagery\n"
        "seed = 99\n"
        "\n"
        "[signal]\n"
        "channels = 4\n"
        "sampling_rate = 500\n"
        "epoch_seconds = 1.5\n"
        "gap_seconds = 0.25\n"
        "amplitude_uv = 12\n"
        "noise_sigma = 0.5\n"
        "carrier_hz = 11\n"
        "trial_jitter = false\n"
        "band = alpha,8,13\n"
        "band = beta,13,30\n"
        "\n"
        "[coupling.task]\n"
        "pair = ch1,ch2,inf\n"
        "\n"
        "[coupling.rest]\n"
        "pair = ch1,ch2,0.5\n";
    const app::SimulateSpec spec = app::parse_simulate_spec(text);
    CHECK(spec.n_subjects == 3);
    CHECK(spec.trials_per_class == 10);
    CHECK(spec.classes == std::vector<std::string>{"water", "yes"});
    CHECK(spec.rest_class == "baseline");
    CHECK(spec.paradigm == Paradigm::visual_imagery);
    CHECK(spec.seed == 99);
    CHECK(spec.channel_labels == std::vector<std::string>{"ch1", "ch2", "ch3", "ch4"});
    CHECK(spec.sampling_rate == 500.0);
    CHECK(spec.epoch_seconds == 1.5);
    CHECK(spec.trial_jitter == false);
    REQUIRE(spec.bands.size() == 2);
    CHECK(spec.bands[1].name == "beta");
    REQUIRE(spec.task_couplings.size() == 1);
    CHECK(std::isinf(spec.task_couplings[0].kappa));
    REQUIRE(spec.rest_couplings.size() == 1);
    CHECK(spec.rest_couplings[0].kappa == 0.5);
}

TEST_CASE("simulate spec enforces its invariants", "[config]") {
    const std::string base =
        "[study]\nsubjects = 2\ntrials_per_class = 4\nclasses = a\n"
        "[signal]\nchannels = 2\n";
    CHECK_NOTHROW(app::parse_simulate_spec(base));

    auto patched = [&](const std::string& from, const std::string& to) {
        std::string text = base;
        text.replace(text.find(from), from.size(), to);
        return text;
    };
    CHECK_THROWS_AS(app::parse_simulate_spec(patched("subjects = 2", "subjects = 1")),
                    config_error);
    CHECK_THROWS_AS(app::parse_simulate_spec(patched("trials_per_class = 4",
                                                     "trials_per_class = 1")),
                    config_error);
    CHECK_THROWS_AS(app::parse_simulate_spec(patched("[signal]\nchannels = 2",
                                                     "[signal]\nchannels = 2\nband = hi,20,200")),
                    config_error);  // exceeds Nyquist at the default rate
    CHECK_THROWS_AS(app::parse_simulate_spec("[study]\nsubjects = 2\n"), parse_error);
}

TEST_CASE("run config resolves paths against its own directory", "[config]") {
    const std::string text =
        "[inputs]\n"
        "recording = S1,S1/session.vhdr\n"
        "recording = S2,S2/session.vhdr\n"
        "\n"
        "[montage]\n"
        "file = cap.montage\n"
        "\n"
        "[bands]\n"
        "band = alpha,8,13\n"
        "\n"
        "[epoch]\n"
        "paradigm = imagined_speech\n"
        "classes = water,yes\n"
        "rest_class = rest\n"
        "start_offset_s = 0.1\n"
        "duration_s = 1.5\n"
        "edge_exclusion_s = 0.2\n"
        "\n"
        "[output]\n"
        "dir = reports\n"
        "mean_decimals = 3\n"
        "stat_decimals = 4\n";
    const app::RunConfig cfg = app::parse_run_config(text, "/base");
    REQUIRE(cfg.recordings.size() == 2);
    CHECK(cfg.recordings[0].first == "S1");
    CHECK(cfg.recordings[0].second == fs::path("/base/S1/session.vhdr"));
    CHECK(cfg.montage == "/base/cap.montage");
    CHECK(cfg.window.start_offset_s == 0.1);
    CHECK(cfg.window.duration_s == 1.5);
    CHECK(cfg.edge_exclusion_s == 0.2);
    CHECK(cfg.output_dir == fs::path("/base/reports"));
    CHECK(cfg.mean_decimals == 3);
    CHECK(cfg.stat_decimals == 4);
    REQUIRE(cfg.classes.size() == 2);
}

TEST_CASE("run config rejects structural mistakes", "[config]") {
    const std::string good =
        "[inputs]\nrecording = S1,a.vhdr\n[bands]\nband = alpha,8,13\n"
        "[epoch]\nclasses = water\n";
    CHECK_NOTHROW(app::parse_run_config(good, "."));
    CHECK_THROWS_AS(app::parse_run_config("[inputs]\n[bands]\nband = a,8,13\n"
                                          "[epoch]\nclasses = w\n", "."),
                    config_error);  // no recordings
    CHECK_THROWS_AS(app::parse_run_config("[inputs]\nrecording = S1,a.vhdr\n"
                                          "recording = S1,b.vhdr\n[bands]\nband = a,8,13\n"
                                          "[epoch]\nclasses = w\n", "."),
                    config_error);  // duplicate id
    CHECK_THROWS_AS(app::parse_run_config("[inputs]\nrecording = S1,a.vhdr\n"
                                          "[epoch]\nclasses = w\n", "."),
                    parse_error);  // no bands section
}

TEST_CASE("validation enumerates every problem at once", "[config]") {
    app::RunConfig cfg;
    cfg.recordings = {{"S1", "/nonexistent/S1.vhdr"}, {"S2", "/nonexistent/S2.vhdr"}};
    cfg.montage = "/nonexistent/cap.montage";
    cfg.bands = {{"alpha", 8.0, 13.0}};
    cfg.classes = {"water"};
    try {
        app::validate_run_config(cfg);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("3 configuration problem(s)") != std::string::npos);
        CHECK(msg.find("S1") != std::string::npos);
        CHECK(msg.find("S2") != std::string::npos);
        CHECK(msg.find("cap.montage") != std::string::npos);
    }
}

TEST_CASE("parallel_for covers every index exactly once", "[threading]") {
    std::vector<std::atomic<int>> hits(257);
    app::parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) REQUIRE(h.load() == 1);

    // Serial and threaded runs produce identical results.
    std::vector<double> serial(100), threaded(100);
    app::parallel_for(100, 1, [&](std::size_t i) { serial[i] = std::sqrt(static_cast<double>(i)); });
    app::parallel_for(100, 6, [&](std::size_t i) { threaded[i] = std::sqrt(static_cast<double>(i)); });
    CHECK(serial == threaded);

    app::parallel_for(0, 4, [&](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("parallel_for rethrows the lowest-index exception", "[threading]") {
    auto boom = [](std::size_t i) {
        if (i == 3 || i == 17 || i == 40)
            throw data_error("bad index " + std::to_string(i));
    };
    CHECK_THROWS_MATCHES(app::parallel_for(64, 8, boom), data_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("bad index 3")));
    CHECK_THROWS_MATCHES(app::parallel_for(64, 1, boom), data_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("bad index 3")));
}

namespace {

const char* tiny_spec_ini =
    "[study]\n"
    "subjects = 2\n"
    "trials_per_class = 8\n"
    "classes = water,yes\n"
    "rest_class = rest\n"
    "paradigm = imagined_speech\n"
    "seed = 7\n"
    "\n"
    "[signal]\n"
    "channels = 12\n"
    "sampling_rate = 250\n"
    "epoch_seconds = 2\n"
    "gap_seconds = 0.2\n"
    "amplitude_uv = 10\n"
    "noise_sigma = 0.5\n"
    "carrier_hz = 10\n"
    "band = alpha,8,13\n"
    "\n"
    "[coupling.task]\n"
    "pair = ch1,ch3,8\n"
    "\n"
    "[coupling.rest]\n"
    "pair = ch1,ch3,0.5\n";

const char* cap12_montage =
    "ch1,B\nch2,B\nch3,V\nch4,V\nch5,A\nch6,A\n"
    "ch7,M\nch8,M\nch9,P\nch10,P\nch11,S\nch12,S\n";

std::string tiny_analyze_ini(const std::string& out_name) {
    return
        "[inputs]\n"
        "recording = S1,S1/session.vhdr\n"
        "recording = S2,S2/session.vhdr\n"
        "\n[montage]\nfile = cap12.montage\n"
        "\n[bands]\nband = alpha,8,13\n"
        "\n[epoch]\n"
        "paradigm = imagined_speech\n"
        "classes = water,yes\n"
        "rest_class = rest\n"
        "start_offset_s = 0\n"
        "duration_s = 2\n"
        "edge_exclusion_s = 0.1\n"
        "\n[output]\ndir = " + out_name + "\n";
}

int run_cli(std::vector<const char*> args) {
    args.insert(args.begin(), "plvkit");
    return app::run(static_cast<int>(args.size()), args.data());
}

}  // namespace

TEST_CASE("simulate, analyze, and report chain end to end", "[cli]") {
    const fs::path dir = fs::temp_directory_path() / "plvkit_e2e";
    fs::remove_all(dir);
    ensure_dir(dir);
    write_file(dir / "study.ini", tiny_spec_ini);
    const std::string study_dir = (dir / "study").string();
    const std::string spec_path = (dir / "study.ini").string();

    REQUIRE(run_cli({"simulate", "--spec", spec_path.c_str(), "--out", study_dir.c_str()}) == 0);
    CHECK(fs::exists(dir / "study/S1/session.vhdr"));
    CHECK(fs::exists(dir / "study/S1/session.eeg"));
    CHECK(fs::exists(dir / "study/S1/session.vmrk"));
    CHECK(fs::exists(dir / "study/S2/session.vhdr"));
    CHECK(fs::exists(dir / "study/manifest.json"));
    CHECK(fs::exists(dir / "study/analyze.ini"));

    // The generated cap only names real 10-10 electrodes, so this synthetic
    // 12-channel study ships its own montage.
    write_file(dir / "study/cap12.montage", cap12_montage);
    write_file(dir / "study/analyze.ini", tiny_analyze_ini("reports"));
    const std::string cfg_path = (dir / "study/analyze.ini").string();
    REQUIRE(run_cli({"analyze", "--config", cfg_path.c_str()}) == 0);

    const fs::path table_csv = dir / "study/reports/imagined_speech_class_table.csv";
    const fs::path report_csv = dir / "study/reports/imagined_speech_region_report.csv";
    REQUIRE(fs::exists(table_csv));
    REQUIRE(fs::exists(report_csv));

    const std::string table = read_file(table_csv);
    CHECK(table.find("subject,water,yes\n") == 0);
    CHECK(table.find("\nS1,") != std::string::npos);
    CHECK(table.find("\nS2,") != std::string::npos);
    CHECK(table.find("\nAvg.,") != std::string::npos);
    CHECK(table.find("\nStd.,") != std::string::npos);

    const std::string report = read_file(report_csv);
    CHECK(report.find("pair,task_mean,rest_mean,t,p,df\n") == 0);
    CHECK(std::count(report.begin(), report.end(), '\n') == 16);  // header + 15 pairs
    CHECK(report.find("B-V,") != std::string::npos);
    CHECK(report.find("P-S,") != std::string::npos);
    // df = subjects - 1 on every row.
    CHECK(report.find(",1\n") != std::string::npos);

    const std::string report_dir = (dir / "study/reports").string();
    REQUIRE(run_cli({"report", "--dir", report_dir.c_str()}) == 0);

    // Re-running analyze into another directory with more threads gives
    // byte-identical tables.
    write_file(dir / "study/analyze2.ini", tiny_analyze_ini("reports_mt"));
    const std::string cfg2 = (dir / "study/analyze2.ini").string();
    REQUIRE(run_cli({"--threads", "4", "analyze", "--config", cfg2.c_str()}) == 0);
    CHECK(read_file(dir / "study/reports_mt/imagined_speech_class_table.csv") == table);
    CHECK(read_file(dir / "study/reports_mt/imagined_speech_region_report.csv") == report);

    fs::remove_all(dir);
}

TEST_CASE("simulated coupling shows up in the analysis output", "[cli]") {
    // Task couples ch1(B)-ch3(V) tightly, rest weakly: the B-V row must have
    // a higher task mean than rest mean; uncoupled pairs must not.
    const fs::path dir = fs::temp_directory_path() / "plvkit_coupling_check";
    fs::remove_all(dir);
    ensure_dir(dir);
    write_file(dir / "study.ini", tiny_spec_ini);

    const app::SimulateSpec spec = app::load_simulate_spec(dir / "study.ini");
    app::run_simulate(spec, dir / "study", 1);
    write_file(dir / "study/cap12.montage", cap12_montage);
    write_file(dir / "study/analyze.ini", tiny_analyze_ini("reports"));

    app::RunConfig cfg = app::load_run_config(dir / "study/analyze.ini");
    app::run_analyze(cfg, 1);

    const std::string report = read_file(dir / "study/reports/imagined_speech_region_report.csv");
    double bv_task = 0.0, bv_rest = 0.0, ap_task = 0.0, ap_rest = 0.0;
    for (const auto& line : split(report, '\n')) {
        const auto fields = split(line, ',');
        if (fields.size() < 6) continue;
        if (fields[0] == "B-V") {
            bv_task = std::stod(fields[1]);
            bv_rest = std::stod(fields[2]);
        } else if (fields[0] == "A-P") {
            ap_task = std::stod(fields[1]);
            ap_rest = std::stod(fields[2]);
        }
    }
    // Only one of the four B-V channel pairs is coupled, so the expected
    // region-level contrast is (plv(8) - plv(0.5)) / 4, about 0.17.
    CHECK(bv_task > bv_rest + 0.1);
    CHECK(std::abs(ap_task - ap_rest) < 0.2);  // uncoupled regions stay near floor

    fs::remove_all(dir);
}

TEST_CASE("environment variable overrides the output directory", "[cli]") {
    const fs::path dir = fs::temp_directory_path() / "plvkit_env_override";
    fs::remove_all(dir);
    ensure_dir(dir);
    write_file(dir / "study.ini", tiny_spec_ini);
    const std::string spec_path = (dir / "study.ini").string();
    const std::string env_dir = (dir / "from_env").string();

    // simulate with no --out fails without the variable...
    CHECK(run_cli({"simulate", "--spec", spec_path.c_str()}) == 2);
    // ...and follows it when set.
    ::setenv(app::out_dir_env, env_dir.c_str(), 1);
    CHECK(run_cli({"simulate", "--spec", spec_path.c_str()}) == 0);
    CHECK(fs::exists(dir / "from_env/S1/session.vhdr"));

    // analyze sends its tables to the override too, even with [output] set.
    write_file(dir / "from_env/cap12.montage", cap12_montage);
    write_file(dir / "from_env/analyze.ini", tiny_analyze_ini("reports"));
    const std::string cfg_path = (dir / "from_env/analyze.ini").string();
    const std::string tables_dir = (dir / "tables").string();
    ::setenv(app::out_dir_env, tables_dir.c_str(), 1);
    CHECK(run_cli({"analyze", "--config", cfg_path.c_str()}) == 0);
    CHECK(fs::exists(dir / "tables/imagined_speech_class_table.csv"));
    CHECK(!fs::exists(dir / "from_env/reports"));
    ::unsetenv(app::out_dir_env);

    fs::remove_all(dir);
}

TEST_CASE("CLI maps failures to documented exit codes", "[cli]") {
    ::unsetenv(app::out_dir_env);
    // Unknown options and missing required options are configuration errors.
    CHECK(run_cli({"simulate"}) == 2);
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({}) == 2);
    // Missing spec file.
    CHECK(run_cli({"simulate", "--spec", "/nonexistent.ini", "--out", "/tmp/x"}) == 2);
    // Missing analysis inputs.
    CHECK(run_cli({"analyze", "--config", "/nonexistent.ini"}) == 2);
    // Report on a directory with no tables is a data error.
    const fs::path dir = fs::temp_directory_path() / "plvkit_empty_reports";
    fs::remove_all(dir);
    ensure_dir(dir);
    const std::string dir_s = dir.string();
    CHECK(run_cli({"report", "--dir", dir_s.c_str()}) == 3);
    fs::remove_all(dir);
}
