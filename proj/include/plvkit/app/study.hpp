#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plvkit/app/config.hpp"
#include "plvkit/app/report.hpp"
#include "plvkit/app/threading.hpp"
#include "plvkit/connectivity.hpp"
#include "plvkit/ingest/brainvision.hpp"
#include "plvkit/ingest/montage.hpp"
#include "plvkit/io.hpp"
#include "plvkit/preprocess.hpp"
#include "plvkit/stats.hpp"
#include "plvkit/synth/coupled.hpp"
#include "plvkit/synth/von_mises.hpp"
#include "plvkit/types.hpp"

namespace plvkit::app {

namespace detail {

inline std::size_t channel_index(const std::vector<std::string>& labels, const std::string& label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw config_error("coupling references channel '" + label + "' not in the channel list");
    return static_cast<std::size_t>(it - labels.begin());
}

// Coupled-oscillator spec for one (subject, class) cell. Task classes use
// the task coupling table, the rest class the rest table.
inline synth::CouplingSpec cell_coupling(const SimulateSpec& spec, std::size_t subject_idx,
                                         std::size_t class_idx, bool is_rest) {
    synth::CouplingSpec cs;
    cs.n_channels = spec.channel_labels.size();
    cs.carrier_hz = spec.carrier_hz;
    cs.trial_jitter = spec.trial_jitter;
    cs.noise_sigma = spec.noise_sigma;
    cs.amplitude_uv = spec.amplitude_uv;
    cs.seed = synth::derive_seed(synth::derive_seed(spec.seed, subject_idx), class_idx);
    for (const CouplingEntry& e : (is_rest ? spec.rest_couplings : spec.task_couplings))
        cs.pairs.push_back({channel_index(spec.channel_labels, e.a),
                            channel_index(spec.channel_labels, e.b), e.kappa});
    return cs;
}

inline std::vector<std::string> subject_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t s = 1; s <= n; ++s) ids.push_back("S" + std::to_string(s));
    return ids;
}

}  // namespace detail

// One subject's continuous session: every class (rest last) as a block of
// trials separated by gaps, with one marker per trial.
inline Recording build_subject_recording(const SimulateSpec& spec, std::size_t subject_idx) {
    const auto epoch_samples =
        static_cast<std::size_t>(std::llround(spec.epoch_seconds * spec.sampling_rate));
    const auto gap_samples =
        static_cast<std::size_t>(std::llround(spec.gap_seconds * spec.sampling_rate));
    if (epoch_samples == 0) throw config_error("epoch window shorter than one sample");

    const std::size_t n_classes = spec.classes.size() + 1;  // + rest
    const std::size_t n_trials = n_classes * spec.trials_per_class;
    const std::size_t nch = spec.channel_labels.size();

    Recording rec;
    rec.channel_labels = spec.channel_labels;
    rec.sampling_rate = spec.sampling_rate;
    rec.n_samples = gap_samples + n_trials * (epoch_samples + gap_samples);
    rec.data.assign(nch * rec.n_samples, 0.0);

    std::vector<double> block(nch * epoch_samples);
    std::size_t cursor = gap_samples;
    for (std::size_t ci = 0; ci < n_classes; ++ci) {
        const bool is_rest = ci == spec.classes.size();
        const std::string& label = is_rest ? spec.rest_class : spec.classes[ci];
        const auto cs = detail::cell_coupling(spec, subject_idx, ci, is_rest);
        synth::validate(cs, spec.sampling_rate);
        for (std::size_t trial = 0; trial < spec.trials_per_class; ++trial) {
            synth::render_trial(cs, trial, epoch_samples, spec.sampling_rate, block.data());
            for (std::size_t c = 0; c < nch; ++c)
                std::copy_n(block.data() + c * epoch_samples, epoch_samples,
                            rec.channel(c) + cursor);
            Marker m;
            m.kind = "Stimulus";
            m.description = epoch_marker_description(
                spec.paradigm, label, is_rest ? Condition::rest : Condition::task);
            m.sample = cursor;
            m.length = epoch_samples;
            rec.markers.push_back(std::move(m));
            cursor += epoch_samples + gap_samples;
        }
    }
    return rec;
}

struct SimulateOutputs {
    std::vector<std::filesystem::path> data_files;
    std::filesystem::path manifest;
    std::filesystem::path analyze_config;
};

inline std::string render_analyze_config(const SimulateSpec& spec) {
    std::string out;
    out += "[inputs]\n";
    for (const std::string& id : detail::subject_ids(spec.n_subjects))
        out += "recording = " + id + "," + id + "/session.vhdr\n";
    out += "\n[montage]\nfile = default\n";
    out += "\n[bands]\n";
    for (const FrequencyBand& band : spec.bands)
        out += "band = " + band.name + "," + shortest(band.low_hz) + "," + shortest(band.high_hz) + "\n";
    out += "\n[epoch]\n";
    out += std::string("paradigm = ") + paradigm_name(spec.paradigm) + "\n";
    out += "classes = ";
    for (std::size_t i = 0; i < spec.classes.size(); ++i)
        out += (i ? "," : "") + spec.classes[i];
    out += "\n";
    out += "rest_class = " + spec.rest_class + "\n";
    out += "start_offset_s = 0\n";
    out += "duration_s = " + shortest(spec.epoch_seconds) + "\n";
    out += "edge_exclusion_s = 0.1\n";
    out += "\n[output]\ndir = reports\n";
    return out;
}

inline SimulateOutputs run_simulate(const SimulateSpec& spec, const std::filesystem::path& out_dir,
                                    unsigned threads) {
    // Validate every cell's coupling before writing anything.
    for (std::size_t ci = 0; ci <= spec.classes.size(); ++ci)
        synth::validate(detail::cell_coupling(spec, 0, ci, ci == spec.classes.size()),
                        spec.sampling_rate);
    ensure_dir(out_dir);

    const auto ids = detail::subject_ids(spec.n_subjects);
    ingest::BvWriteOptions write_opts;
    write_opts.binary_format = ingest::BvBinaryFormat::int16;
    write_opts.resolutions.assign(spec.channel_labels.size(), 0.1);
    write_opts.unit = "µV";

    std::vector<ingest::BvPaths> written(spec.n_subjects);
    parallel_for(spec.n_subjects, threads, [&](std::size_t s) {
        const Recording rec = build_subject_recording(spec, s);
        written[s] = ingest::write_recording(out_dir / ids[s], "session", rec, write_opts);
    });

    SimulateOutputs outputs;
    for (const auto& paths : written) {
        outputs.data_files.push_back(paths.vhdr);
        outputs.data_files.push_back(paths.eeg);
        outputs.data_files.push_back(paths.vmrk);
    }

    nlohmann::json manifest;
    manifest["paradigm"] = paradigm_name(spec.paradigm);
    manifest["classes"] = spec.classes;
    manifest["rest_class"] = spec.rest_class;
    manifest["subjects"] = ids;
    manifest["sampling_rate"] = spec.sampling_rate;
    manifest["epoch_seconds"] = spec.epoch_seconds;
    manifest["trials_per_class"] = spec.trials_per_class;
    manifest["carrier_hz"] = spec.carrier_hz;
    manifest["seed"] = spec.seed;
    nlohmann::json bands = nlohmann::json::array();
    for (const FrequencyBand& b : spec.bands)
        bands.push_back({{"name", b.name}, {"low_hz", b.low_hz}, {"high_hz", b.high_hz}});
    manifest["bands"] = bands;

    auto coupling_json = [](const std::vector<CouplingEntry>& entries) {
        nlohmann::json arr = nlohmann::json::array();
        for (const CouplingEntry& e : entries) {
            nlohmann::json item;
            item["a"] = e.a;
            item["b"] = e.b;
            if (std::isinf(e.kappa)) item["kappa"] = "inf";
            else item["kappa"] = e.kappa;
            item["expected_plv"] = synth::expected_plv(e.kappa);
            arr.push_back(item);
        }
        return arr;
    };
    manifest["coupling_task"] = coupling_json(spec.task_couplings);
    manifest["coupling_rest"] = coupling_json(spec.rest_couplings);

    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : outputs.data_files)
        files.push_back(std::filesystem::relative(p, out_dir).generic_string());
    manifest["files"] = files;

    outputs.manifest = out_dir / "manifest.json";
    write_file(outputs.manifest, manifest.dump(2) + "\n");
    outputs.analyze_config = out_dir / "analyze.ini";
    write_file(outputs.analyze_config, render_analyze_config(spec));
    return outputs;
}

struct AnalyzeOutputs {
    std::filesystem::path class_table_csv;
    std::filesystem::path region_report_csv;
};

// All config and filesystem problems reported in one pass, before any
// numeric work starts.
inline void validate_run_config(const RunConfig& cfg) {
    std::vector<std::string> problems;
    for (const auto& [id, path] : cfg.recordings)
        if (!std::filesystem::exists(path))
            problems.push_back("missing recording for " + id + ": " + path.string());
    if (cfg.montage != "default" && !std::filesystem::exists(cfg.montage))
        problems.push_back("missing montage file: " + cfg.montage);

    std::vector<std::string> first_labels;
    for (const auto& [id, path] : cfg.recordings) {
        if (!std::filesystem::exists(path)) continue;
        try {
            const auto header = ingest::parse_brainvision_header(read_file(path));
            std::vector<std::string> labels;
            for (const auto& ch : header.channels) labels.push_back(ch.label);
            if (first_labels.empty()) {
                first_labels = labels;
                for (const FrequencyBand& band : cfg.bands)
                    if (!(band.high_hz < header.sampling_rate() / 2.0))
                        problems.push_back("band '" + band.name + "' exceeds Nyquist at fs " +
                                           std::to_string(header.sampling_rate()));
                try {
                    cfg.montage == "default"
                        ? ingest::default_montage(labels)
                        : ingest::load_montage(cfg.montage, labels);
                } catch (const plvkit::error& e) {
                    problems.push_back(std::string("montage: ") + e.what());
                }
            } else if (labels != first_labels) {
                problems.push_back("subject " + id + " channel labels differ from " +
                                   cfg.recordings.front().first);
            }
        } catch (const plvkit::error& e) {
            problems.push_back("header " + path.string() + ": " + e.what());
        }
    }

    if (!problems.empty()) {
        std::string msg = std::to_string(problems.size()) + " configuration problem(s):";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw config_error(msg);
    }
}

namespace detail {

// Region-pair PLV values plus the all-channel grand average for one
// (subject, class) cell, averaged across the configured bands.
struct CellValues {
    double all = 0.0;
    std::vector<double> pairs;  // 15 region pairs in report order
};

inline CellValues analyze_cell(const EpochSet& epochs, const RunConfig& cfg,
                               const ingest::Montage& montage) {
    const auto pairs = region_pairs();
    const auto edge = static_cast<std::size_t>(
        std::ceil(epochs.sampling_rate * cfg.edge_exclusion_s));
    CellValues cell;
    cell.pairs.assign(pairs.size(), 0.0);
    for (const FrequencyBand& band : cfg.bands) {
        const PhaseEpochs phases = phase_pipeline(epochs, band);
        const PlvMatrix matrix = plv_matrix(phases, edge);
        cell.all += region_average(matrix, montage, Region::All, Region::All).value;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi)
            cell.pairs[pi] +=
                region_average(matrix, montage, pairs[pi].first, pairs[pi].second).value;
    }
    const auto n_bands = static_cast<double>(cfg.bands.size());
    cell.all /= n_bands;
    for (double& v : cell.pairs) v /= n_bands;
    return cell;
}

}  // namespace detail

inline AnalyzeOutputs run_analyze(const RunConfig& cfg, unsigned threads) {
    validate_run_config(cfg);
    ensure_dir(cfg.output_dir);

    const std::size_t n_subjects = cfg.recordings.size();
    const std::size_t n_classes = cfg.classes.size();
    const auto n_pairs = region_pairs().size();

    // slot per subject: task classes then rest, each one CellValues
    std::vector<std::vector<detail::CellValues>> cells(n_subjects);
    parallel_for(n_subjects, threads, [&](std::size_t s) {
        const Recording rec = ingest::load_recording(cfg.recordings[s].second);
        const ingest::Montage montage = cfg.montage == "default"
                                            ? ingest::default_montage(rec.channel_labels)
                                            : ingest::load_montage(cfg.montage, rec.channel_labels);
        std::vector<detail::CellValues> row;
        row.reserve(n_classes + 1);
        for (std::size_t ci = 0; ci <= n_classes; ++ci) {
            const bool is_rest = ci == n_classes;
            const EpochSet epochs = extract_epochs(
                rec, cfg.paradigm, is_rest ? cfg.rest_class : cfg.classes[ci],
                is_rest ? Condition::rest : Condition::task, cfg.window);
            row.push_back(detail::analyze_cell(epochs, cfg, montage));
        }
        cells[s] = std::move(row);
    });

    std::vector<std::string> ids;
    for (const auto& [id, path] : cfg.recordings) ids.push_back(id);

    std::vector<std::vector<double>> table_values(n_subjects);
    std::vector<std::vector<double>> task_grid(n_subjects), rest_grid(n_subjects);
    for (std::size_t s = 0; s < n_subjects; ++s) {
        for (std::size_t ci = 0; ci < n_classes; ++ci)
            table_values[s].push_back(cells[s][ci].all);
        task_grid[s].assign(n_pairs, 0.0);
        for (std::size_t ci = 0; ci < n_classes; ++ci)
            for (std::size_t pi = 0; pi < n_pairs; ++pi)
                task_grid[s][pi] += cells[s][ci].pairs[pi];
        for (double& v : task_grid[s]) v /= static_cast<double>(n_classes);
        rest_grid[s] = cells[s][n_classes].pairs;
    }

    const ClassTable table = class_table(ids, cfg.classes, table_values);
    const auto report = stats::region_report(task_grid, rest_grid);

    AnalyzeOutputs out;
    out.class_table_csv = cfg.output_dir / class_table_filename(cfg.paradigm);
    out.region_report_csv = cfg.output_dir / region_report_filename(cfg.paradigm);
    write_file(out.class_table_csv, render_class_table_csv(table, cfg.mean_decimals));
    write_file(out.region_report_csv,
               render_region_report_csv(report, cfg.mean_decimals, cfg.stat_decimals));
    return out;
}

}  // namespace plvkit::app
