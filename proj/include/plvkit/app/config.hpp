#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/ingest/montage.hpp"
#include "plvkit/ini.hpp"
#include "plvkit/io.hpp"
#include "plvkit/types.hpp"

namespace plvkit::app {

namespace detail {

inline bool to_bool(const std::string& v, const std::string& context) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw parse_error("value '" + v + "' for " + context + " is not a boolean");
}

inline double to_kappa(const std::string& v, const std::string& context) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    return to_double(v, context);
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    for (const std::string& part : plvkit::split(v, ',')) {
        const std::string item = plvkit::detail::trim(part);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace detail

// A named channel pair with separate task / rest coupling strengths.
struct CouplingEntry {
    std::string a, b;
    double kappa = 0.0;
};

// Parsed `simulate` spec: study shape, signal model, and the task/rest
// coupling tables.
struct SimulateSpec {
    // [study]
    std::size_t n_subjects = 16;
    std::size_t trials_per_class = 50;
    std::vector<std::string> classes;  // task classes, class-table column order
    std::string rest_class = "rest";
    Paradigm paradigm = Paradigm::imagined_speech;
    std::uint64_t seed = 1;

    // [signal]
    std::vector<std::string> channel_labels;
    double sampling_rate = 250.0;
    double epoch_seconds = 2.0;
    double gap_seconds = 0.2;
    double amplitude_uv = 10.0;
    double noise_sigma = 0.0;
    double carrier_hz = 10.0;
    bool trial_jitter = true;
    std::vector<FrequencyBand> bands;  // advertised analysis bands

    // [coupling.task] / [coupling.rest]
    std::vector<CouplingEntry> task_couplings;
    std::vector<CouplingEntry> rest_couplings;
};

// Parsed `analyze` config.
struct RunConfig {
    std::vector<std::pair<std::string, std::filesystem::path>> recordings;  // (subject id, vhdr)
    std::string montage = "default";  // "default" or a montage file path
    std::vector<FrequencyBand> bands;
    Paradigm paradigm = Paradigm::imagined_speech;
    std::vector<std::string> classes;
    std::string rest_class = "rest";
    EpochWindow window{0.0, 2.0};
    double edge_exclusion_s = 0.1;
    std::filesystem::path output_dir = "out";
    int mean_decimals = 2;
    int stat_decimals = 3;
};

namespace detail {

inline std::vector<FrequencyBand> parse_band_entries(const IniSection& section) {
    std::vector<FrequencyBand> bands;
    for (const std::string& value : section.get_all("band")) {
        const auto parts = split_list(value);
        if (parts.size() != 3)
            throw parse_error("band '" + value + "' must be name,low_hz,high_hz");
        FrequencyBand band{parts[0], to_double(parts[1], "band low edge"),
                           to_double(parts[2], "band high edge")};
        if (!(0.0 < band.low_hz && band.low_hz < band.high_hz))
            throw config_error("band '" + band.name + "' needs 0 < low < high");
        bands.push_back(std::move(band));
    }
    return bands;
}

inline std::vector<CouplingEntry> parse_coupling_entries(const IniSection* section) {
    std::vector<CouplingEntry> entries;
    if (!section) return entries;
    for (const std::string& value : section->get_all("pair")) {
        const auto parts = split_list(value);
        if (parts.size() != 3)
            throw parse_error("coupling pair '" + value + "' must be CH_A,CH_B,kappa");
        entries.push_back({parts[0], parts[1], to_kappa(parts[2], "coupling kappa")});
    }
    return entries;
}

inline std::vector<std::string> parse_channel_list(const std::string& value) {
    if (value == "default64") return ingest::default_channel_labels();
    if (value.find(',') == std::string::npos && !value.empty() &&
        value.find_first_not_of("0123456789") == std::string::npos) {
        const long long n = to_int(value, "channel count");
        if (n < 1) throw config_error("channel count must be >= 1");
        std::vector<std::string> labels;
        for (long long c = 1; c <= n; ++c) labels.push_back("ch" + std::to_string(c));
        return labels;
    }
    const auto labels = split_list(value);
    if (labels.empty()) throw config_error("empty channel list");
    return labels;
}

}  // namespace detail

inline SimulateSpec parse_simulate_spec(const std::string& text) {
    const IniDocument doc = parse_ini(text);
    SimulateSpec spec;

    const IniSection& study = doc.require("study");
    spec.n_subjects = static_cast<std::size_t>(to_int(study.require("subjects"), "subjects"));
    spec.trials_per_class =
        static_cast<std::size_t>(to_int(study.require("trials_per_class"), "trials_per_class"));
    if (spec.n_subjects < 2) throw config_error("study needs at least 2 subjects");
    if (spec.trials_per_class < 2) throw config_error("study needs at least 2 trials per class");
    spec.classes = detail::split_list(study.require("classes"));
    if (spec.classes.empty()) throw config_error("study needs at least one task class");
    if (auto v = study.get("rest_class")) spec.rest_class = *v;
    if (auto v = study.get("paradigm")) spec.paradigm = parse_paradigm(*v);
    if (auto v = study.get("seed"))
        spec.seed = static_cast<std::uint64_t>(to_int(*v, "seed"));

    const IniSection& signal = doc.require("signal");
    spec.channel_labels = detail::parse_channel_list(signal.require("channels"));
    if (auto v = signal.get("sampling_rate")) spec.sampling_rate = to_double(*v, "sampling_rate");
    if (!(spec.sampling_rate > 0.0)) throw config_error("sampling_rate must be positive");
    if (auto v = signal.get("epoch_seconds")) spec.epoch_seconds = to_double(*v, "epoch_seconds");
    if (auto v = signal.get("gap_seconds")) spec.gap_seconds = to_double(*v, "gap_seconds");
    if (!(spec.epoch_seconds > 0.0) || spec.gap_seconds < 0.0)
        throw config_error("epoch_seconds must be positive and gap_seconds >= 0");
    if (auto v = signal.get("amplitude_uv")) spec.amplitude_uv = to_double(*v, "amplitude_uv");
    if (auto v = signal.get("noise_sigma")) spec.noise_sigma = to_double(*v, "noise_sigma");
    if (auto v = signal.get("carrier_hz")) spec.carrier_hz = to_double(*v, "carrier_hz");
    if (auto v = signal.get("trial_jitter")) spec.trial_jitter = detail::to_bool(*v, "trial_jitter");
    spec.bands = detail::parse_band_entries(signal);
    if (spec.bands.empty())
        spec.bands.push_back(FrequencyBand{"alpha", 8.0, 13.0});

    spec.task_couplings = detail::parse_coupling_entries(doc.find("coupling.task"));
    spec.rest_couplings = detail::parse_coupling_entries(doc.find("coupling.rest"));

    for (const auto& band : spec.bands)
        if (!(band.high_hz < spec.sampling_rate / 2.0))
            throw config_error("band '" + band.name + "' exceeds Nyquist at fs " +
                               std::to_string(spec.sampling_rate));
    return spec;
}

// Paths inside the config resolve relative to the config file's directory.
inline RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
    const IniDocument doc = parse_ini(text);
    RunConfig cfg;

    const IniSection& inputs = doc.require("inputs");
    for (const std::string& value : inputs.get_all("recording")) {
        const auto parts = detail::split_list(value);
        if (parts.size() != 2)
            throw parse_error("recording entry '" + value + "' must be SUBJECT_ID,path.vhdr");
        cfg.recordings.emplace_back(parts[0], base_dir / parts[1]);
    }
    if (cfg.recordings.empty()) throw config_error("config lists no recordings");
    for (std::size_t i = 0; i < cfg.recordings.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.recordings.size(); ++k)
            if (cfg.recordings[i].first == cfg.recordings[k].first)
                throw config_error("duplicate subject id '" + cfg.recordings[i].first + "'");

    if (const IniSection* montage = doc.find("montage"))
        if (auto v = montage->get("file")) {
            cfg.montage = *v;
            if (cfg.montage != "default")
                cfg.montage = (base_dir / cfg.montage).string();
        }

    cfg.bands = detail::parse_band_entries(doc.require("bands"));
    if (cfg.bands.empty()) throw config_error("config lists no bands");

    const IniSection& epoch = doc.require("epoch");
    if (auto v = epoch.get("paradigm")) cfg.paradigm = parse_paradigm(*v);
    cfg.classes = detail::split_list(epoch.require("classes"));
    if (cfg.classes.empty()) throw config_error("config lists no task classes");
    if (auto v = epoch.get("rest_class")) cfg.rest_class = *v;
    if (auto v = epoch.get("start_offset_s")) cfg.window.start_offset_s = to_double(*v, "start_offset_s");
    if (auto v = epoch.get("duration_s")) cfg.window.duration_s = to_double(*v, "duration_s");
    if (!(cfg.window.duration_s > 0.0)) throw config_error("duration_s must be positive");
    if (auto v = epoch.get("edge_exclusion_s")) cfg.edge_exclusion_s = to_double(*v, "edge_exclusion_s");
    if (cfg.edge_exclusion_s < 0.0) throw config_error("edge_exclusion_s must be >= 0");

    std::filesystem::path out_dir = cfg.output_dir;
    if (const IniSection* output = doc.find("output")) {
        if (auto v = output->get("dir")) out_dir = *v;
        if (auto v = output->get("mean_decimals"))
            cfg.mean_decimals = static_cast<int>(to_int(*v, "mean_decimals"));
        if (auto v = output->get("stat_decimals"))
            cfg.stat_decimals = static_cast<int>(to_int(*v, "stat_decimals"));
        if (cfg.mean_decimals < 0 || cfg.mean_decimals > 9 || cfg.stat_decimals < 0 ||
            cfg.stat_decimals > 9)
            throw config_error("report decimals must be in 0..9");
    }
    cfg.output_dir = base_dir / out_dir;
    return cfg;
}

inline SimulateSpec load_simulate_spec(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        throw config_error("spec file does not exist: " + path.string());
    return parse_simulate_spec(read_file(path));
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        throw config_error("config file does not exist: " + path.string());
    return parse_run_config(read_file(path), path.parent_path());
}

}  // namespace plvkit::app
