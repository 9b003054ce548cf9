#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "plvkit/dsp/fft.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/synth/rng.hpp"

namespace plvkit::synth {

// 1/f noise by spectral shaping: Gaussian spectrum with 1/sqrt(k) magnitude
// envelope, Hermitian-symmetrized, inverse transformed, rescaled to an exact
// RMS of sigma. Fully determined by the seed.
inline std::vector<double> gen_pink_noise(std::size_t n_samples, double sigma, std::uint64_t seed) {
    if (n_samples < 2) throw config_error("pink noise needs at least 2 samples");
    if (sigma < 0.0) throw config_error("noise sigma must be >= 0");
    if (sigma == 0.0) return std::vector<double>(n_samples, 0.0);

    Rng rng(seed);
    std::vector<dsp::cplx> spec(n_samples, dsp::cplx(0.0, 0.0));
    const std::size_t half = n_samples / 2;
    for (std::size_t k = 1; k < n_samples - half; ++k) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(k));
        const double re = rng.next_normal();
        const double im = rng.next_normal();
        spec[k] = amp * dsp::cplx(re, im);
        spec[n_samples - k] = std::conj(spec[k]);
    }
    if (n_samples % 2 == 0)
        spec[half] = dsp::cplx(rng.next_normal() / std::sqrt(static_cast<double>(half)), 0.0);

    dsp::ifft(spec);
    std::vector<double> out(n_samples);
    double ss = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        out[i] = spec[i].real();
        ss += out[i] * out[i];
    }
    const double rms = std::sqrt(ss / static_cast<double>(n_samples));
    if (rms == 0.0) return out;  // all-zero draw; keep zeros rather than divide by 0
    const double scale = sigma / rms;
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace plvkit::synth
