#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "plvkit/dsp/butterworth.hpp"
#include "plvkit/dsp/hilbert.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/types.hpp"

namespace plvkit {

// Marker description that tags an epoch class, e.g.
// "imagined_speech:ambulance:task".
inline std::string epoch_marker_description(Paradigm paradigm, const std::string& class_label,
                                            Condition condition) {
    return std::string(paradigm_name(paradigm)) + ":" + class_label + ":" + condition_name(condition);
}

// Cuts one trial per matching marker, ordered by time, demeaned per trial
// and channel. The window is relative to the marker sample.
inline EpochSet extract_epochs(const Recording& rec, Paradigm paradigm,
                               const std::string& class_label, Condition condition,
                               const EpochWindow& window) {
    if (!(rec.sampling_rate > 0.0)) throw data_error("recording has no sampling rate");
    if (!(window.duration_s > 0.0)) throw config_error("epoch duration must be positive");

    const std::string wanted = epoch_marker_description(paradigm, class_label, condition);
    std::vector<std::size_t> onsets;
    for (const Marker& m : rec.markers)
        if (m.description == wanted) onsets.push_back(m.sample);
    if (onsets.empty())
        throw data_error("no markers matching '" + wanted + "' in recording");
    std::sort(onsets.begin(), onsets.end());

    const auto offset = static_cast<long long>(std::llround(window.start_offset_s * rec.sampling_rate));
    const auto count = static_cast<std::size_t>(std::llround(window.duration_s * rec.sampling_rate));
    if (count == 0) throw config_error("epoch window shorter than one sample");

    const std::size_t nch = rec.n_channels();
    EpochSet epochs;
    epochs.data = Tensor3(onsets.size(), nch, count);
    epochs.channel_labels = rec.channel_labels;
    epochs.sampling_rate = rec.sampling_rate;
    epochs.paradigm = paradigm;
    epochs.class_label = class_label;
    epochs.condition = condition;
    epochs.window = window;

    for (std::size_t n = 0; n < onsets.size(); ++n) {
        const long long start = static_cast<long long>(onsets[n]) + offset;
        if (start < 0 || static_cast<std::size_t>(start) + count > rec.n_samples)
            throw data_error("epoch window [" + std::to_string(start) + ", " +
                             std::to_string(start + static_cast<long long>(count)) +
                             ") for marker at sample " + std::to_string(onsets[n]) +
                             " exceeds recording bounds (0, " + std::to_string(rec.n_samples) + ")");
        for (std::size_t c = 0; c < nch; ++c) {
            const double* src = rec.channel(c) + start;
            double* dst = epochs.data.row(n, c);
            double mean = 0.0;
            for (std::size_t t = 0; t < count; ++t) mean += src[t];
            mean /= static_cast<double>(count);
            for (std::size_t t = 0; t < count; ++t) dst[t] = src[t] - mean;
        }
    }
    return epochs;
}

// Zero-phase band-pass of every trial and channel; shape and tags preserved.
inline EpochSet bandpass(const EpochSet& epochs, const FrequencyBand& band, int order = 4) {
    const dsp::SosFilter filt =
        dsp::design_butterworth_bandpass(order, band.low_hz, band.high_hz, epochs.sampling_rate);
    EpochSet out = epochs;
    for (std::size_t n = 0; n < out.data.trials(); ++n)
        for (std::size_t c = 0; c < out.data.channels(); ++c)
            dsp::sosfiltfilt_inplace(filt, out.data.row(n, c), out.data.samples());
    return out;
}

// Instantaneous phase of already band-limited epochs; the band tag is carried
// along for downstream labeling.
inline PhaseEpochs analytic_phase(const EpochSet& epochs, const FrequencyBand& band) {
    PhaseEpochs out;
    out.phase = Tensor3(epochs.data.trials(), epochs.data.channels(), epochs.data.samples());
    out.channel_labels = epochs.channel_labels;
    out.sampling_rate = epochs.sampling_rate;
    out.band = band;
    out.paradigm = epochs.paradigm;
    out.class_label = epochs.class_label;
    out.condition = epochs.condition;
    out.window = epochs.window;
    for (std::size_t n = 0; n < epochs.data.trials(); ++n)
        for (std::size_t c = 0; c < epochs.data.channels(); ++c)
            dsp::instantaneous_phase(epochs.data.row(n, c), epochs.data.samples(),
                                     out.phase.row(n, c));
    return out;
}

// Band-limit then extract phase in one step.
inline PhaseEpochs phase_pipeline(const EpochSet& epochs, const FrequencyBand& band,
                                  int order = 4) {
    return analytic_phase(bandpass(epochs, band, order), band);
}

// Default transient exclusion: ceil(fs * 0.1) samples on each side.
inline std::size_t default_edge_exclusion(double sampling_rate) {
    return static_cast<std::size_t>(std::ceil(sampling_rate * 0.1));
}

}  // namespace plvkit
