#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/synth/pink_noise.hpp"
#include "plvkit/synth/rng.hpp"
#include "plvkit/synth/von_mises.hpp"
#include "plvkit/types.hpp"

namespace plvkit::synth {

struct ChannelCoupling {
    std::size_t a = 0;
    std::size_t b = 0;
    double kappa = 0.0;  // von Mises concentration; +inf = rigid locking
};

// Ground-truth-controlled generator: coupled channel pairs share a carrier
// whose per-trial phase offset is von Mises distributed, so the expected PLV
// of a pair is expected_plv(kappa) exactly.
struct CouplingSpec {
    std::size_t n_channels = 2;
    std::vector<ChannelCoupling> pairs;
    double carrier_hz = 10.0;
    bool trial_jitter = true;    // random common base phase per trial
    double noise_sigma = 0.0;    // additive pink noise, microvolts RMS
    double amplitude_uv = 10.0;  // carrier amplitude
    std::uint64_t seed = 1;
};

inline void validate(const CouplingSpec& spec, double fs) {
    if (spec.n_channels == 0) throw config_error("coupling spec needs at least 1 channel");
    if (!(fs > 2.0 * spec.carrier_hz))
        throw config_error("carrier " + std::to_string(spec.carrier_hz) +
                           " Hz violates Nyquist at fs " + std::to_string(fs));
    if (!(spec.carrier_hz > 0.0)) throw config_error("carrier frequency must be positive");
    if (spec.noise_sigma < 0.0) throw config_error("noise sigma must be >= 0");
    if (spec.amplitude_uv <= 0.0) throw config_error("carrier amplitude must be positive");

    std::vector<char> used(spec.n_channels, 0);
    for (const ChannelCoupling& c : spec.pairs) {
        if (c.a >= spec.n_channels || c.b >= spec.n_channels)
            throw config_error("coupling references channel beyond " +
                               std::to_string(spec.n_channels));
        if (c.a == c.b) throw config_error("coupling pairs a channel with itself");
        if (used[c.a] || used[c.b])
            throw config_error("channel " + std::to_string(used[c.a] ? c.a : c.b) +
                               " appears in more than one coupling");
        used[c.a] = used[c.b] = 1;
        if (std::isnan(c.kappa) || c.kappa < 0.0)
            throw config_error("coupling concentration must be >= 0");
    }
}

// Per-channel carrier phase offsets for one trial. Coupled pairs share a
// base phase; the second channel adds a von Mises-distributed lag. Draw
// order is fixed (ascending channel), so output depends only on the seed.
inline std::vector<double> trial_phases(const CouplingSpec& spec, std::size_t trial) {
    Rng rng(derive_seed(spec.seed, trial));
    std::vector<double> phases(spec.n_channels, 0.0);
    std::vector<char> assigned(spec.n_channels, 0);
    std::vector<const ChannelCoupling*> pair_of(spec.n_channels, nullptr);
    for (const ChannelCoupling& c : spec.pairs) {
        pair_of[c.a] = &c;
        pair_of[c.b] = &c;
    }
    for (std::size_t ch = 0; ch < spec.n_channels; ++ch) {
        if (assigned[ch]) continue;
        const ChannelCoupling* pair = pair_of[ch];
        if (!pair) {
            phases[ch] = rng.next_angle() - std::numbers::pi;
            assigned[ch] = 1;
            continue;
        }
        const double base = spec.trial_jitter ? rng.next_angle() - std::numbers::pi : 0.0;
        const double lag = sample_von_mises(rng, 0.0, pair->kappa);
        phases[pair->a] = base;
        phases[pair->b] = base + lag;
        assigned[pair->a] = assigned[pair->b] = 1;
    }
    return phases;
}

// Renders one trial into a channels x samples buffer (channel-major).
inline void render_trial(const CouplingSpec& spec, std::size_t trial, std::size_t n_samples,
                         double fs, double* dst) {
    const auto phases = trial_phases(spec, trial);
    const double w = 2.0 * std::numbers::pi * spec.carrier_hz / fs;
    const std::uint64_t trial_seed = derive_seed(spec.seed, trial);
    for (std::size_t ch = 0; ch < spec.n_channels; ++ch) {
        double* row = dst + ch * n_samples;
        for (std::size_t t = 0; t < n_samples; ++t)
            row[t] = spec.amplitude_uv * std::cos(w * static_cast<double>(t) + phases[ch]);
        if (spec.noise_sigma > 0.0) {
            const auto noise =
                gen_pink_noise(n_samples, spec.noise_sigma, derive_seed(trial_seed, 1 + ch));
            for (std::size_t t = 0; t < n_samples; ++t) row[t] += noise[t];
        }
    }
}

inline EpochSet gen_coupled_epochs(const CouplingSpec& spec, std::size_t n_trials,
                                   std::size_t n_samples, double fs) {
    validate(spec, fs);
    if (n_trials == 0 || n_samples == 0)
        throw config_error("epoch generation needs positive trial and sample counts");

    EpochSet epochs;
    epochs.data = Tensor3(n_trials, spec.n_channels, n_samples);
    for (std::size_t ch = 0; ch < spec.n_channels; ++ch)
        epochs.channel_labels.push_back("ch" + std::to_string(ch + 1));
    epochs.sampling_rate = fs;
    epochs.window = EpochWindow{0.0, static_cast<double>(n_samples) / fs};
    for (std::size_t n = 0; n < n_trials; ++n)
        render_trial(spec, n, n_samples, fs, epochs.data.row(n, 0));
    return epochs;
}

}  // namespace plvkit::synth
