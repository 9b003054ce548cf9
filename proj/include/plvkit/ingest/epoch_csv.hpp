#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/io.hpp"
#include "plvkit/types.hpp"

namespace plvkit::ingest {

// Everything an epoch tensor needs that the CSV itself does not carry.
struct EpochCsvLayout {
    std::vector<std::string> channel_labels;  // empty: synthesized ch1..chN
    double sampling_rate = 250.0;
    Paradigm paradigm = Paradigm::imagined_speech;
    std::string class_label = "unknown";
    Condition condition = Condition::task;
    EpochWindow window;
};

inline constexpr const char* epoch_csv_header = "trial,channel,sample,value_uv";

inline EpochSet parse_epochs_csv(const std::string& text, const EpochCsvLayout& layout = {}) {
    auto lines = split(text, '\n');
    if (lines.empty() || plvkit::detail::trim(lines[0]) != epoch_csv_header)
        throw parse_error(std::string("epoch CSV must start with header '") + epoch_csv_header + "'");

    struct Cell {
        std::size_t trial, channel, sample;
        double value;
    };
    std::vector<Cell> cells;
    std::size_t n_trials = 0, n_channels = 0, n_samples = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = plvkit::detail::trim(lines[i]);
        if (line.empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 4)
            throw parse_error("epoch CSV line " + std::to_string(i + 1) + ": expected 4 fields");
        const auto where = "line " + std::to_string(i + 1);
        const long long trial = to_int(parts[0], where + " trial");
        const long long channel = to_int(parts[1], where + " channel");
        const long long sample = to_int(parts[2], where + " sample");
        if (trial < 0 || channel < 0 || sample < 0)
            throw parse_error(where + ": negative index");
        const double value = to_double(parts[3], where + " value_uv");
        cells.push_back({static_cast<std::size_t>(trial), static_cast<std::size_t>(channel),
                         static_cast<std::size_t>(sample), value});
        n_trials = std::max(n_trials, cells.back().trial + 1);
        n_channels = std::max(n_channels, cells.back().channel + 1);
        n_samples = std::max(n_samples, cells.back().sample + 1);
    }
    if (cells.empty()) throw data_error("epoch CSV contains no data rows");

    EpochSet epochs;
    epochs.data = Tensor3(n_trials, n_channels, n_samples);
    std::vector<char> seen(n_trials * n_channels * n_samples, 0);
    for (const Cell& c : cells) {
        const std::size_t idx = (c.trial * n_channels + c.channel) * n_samples + c.sample;
        if (seen[idx])
            throw data_error("duplicate cell (trial " + std::to_string(c.trial) + ", channel " +
                             std::to_string(c.channel) + ", sample " + std::to_string(c.sample) + ")");
        seen[idx] = 1;
        epochs.data.at(c.trial, c.channel, c.sample) = c.value;
    }
    if (cells.size() != seen.size())
        throw data_error("epoch CSV is not dense: " + std::to_string(cells.size()) + " cells for shape (" +
                         std::to_string(n_trials) + "," + std::to_string(n_channels) + "," +
                         std::to_string(n_samples) + ")");

    if (!layout.channel_labels.empty()) {
        if (layout.channel_labels.size() != n_channels)
            throw config_error("layout declares " + std::to_string(layout.channel_labels.size()) +
                               " channel labels, CSV has " + std::to_string(n_channels) + " channels");
        epochs.channel_labels = layout.channel_labels;
    } else {
        for (std::size_t c = 0; c < n_channels; ++c)
            epochs.channel_labels.push_back("ch" + std::to_string(c + 1));
    }
    epochs.sampling_rate = layout.sampling_rate;
    epochs.paradigm = layout.paradigm;
    epochs.class_label = layout.class_label;
    epochs.condition = layout.condition;
    epochs.window = layout.window;
    return epochs;
}

inline EpochSet load_epochs_csv(const std::filesystem::path& path, const EpochCsvLayout& layout = {}) {
    return parse_epochs_csv(read_file(path), layout);
}

inline std::string format_epochs_csv(const EpochSet& epochs) {
    std::string out = std::string(epoch_csv_header) + "\n";
    const Tensor3& d = epochs.data;
    for (std::size_t n = 0; n < d.trials(); ++n)
        for (std::size_t c = 0; c < d.channels(); ++c)
            for (std::size_t t = 0; t < d.samples(); ++t)
                out += std::to_string(n) + "," + std::to_string(c) + "," + std::to_string(t) + "," +
                       shortest(d.at(n, c, t)) + "\n";
    return out;
}

inline void write_epochs_csv(const std::filesystem::path& path, const EpochSet& epochs) {
    write_file(path, format_epochs_csv(epochs));
}

}  // namespace plvkit::ingest
