#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"

namespace plvkit::dsp {

// One second-order section, direct form II transposed, a0 normalized to 1.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

struct SosFilter {
    std::vector<Biquad> sections;
};

// Band-pass Butterworth of even analog order `order` (effective roll-off
// doubles under forward-backward filtering). Classic path: analog prototype
// poles, frequency prewarp, LP->BP transform, bilinear map, biquad pairing.
inline SosFilter design_butterworth_bandpass(int order, double low_hz, double high_hz, double fs) {
    if (order < 2 || order % 2 != 0)
        throw config_error("band-pass order must be even and >= 2");
    if (!(fs > 0.0)) throw config_error("sampling rate must be positive");
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs / 2.0))
        throw config_error("band edges must satisfy 0 < low < high < fs/2 (got " +
                           std::to_string(low_hz) + ".." + std::to_string(high_hz) + " Hz at fs " +
                           std::to_string(fs) + ")");

    using cd = std::complex<double>;
    const double k_bilinear = 2.0 * fs;
    const double w1 = k_bilinear * std::tan(std::numbers::pi * low_hz / fs);
    const double w2 = k_bilinear * std::tan(std::numbers::pi * high_hz / fs);
    const double bw = w2 - w1;
    const double w0_sq = w1 * w2;

    // Denominator product over all 2*order analog poles, assembled from
    // conjugate pairs so the result is exactly real.
    double denom = 1.0;
    SosFilter f;
    f.sections.reserve(static_cast<std::size_t>(order));
    for (int k = 0; k < order / 2; ++k) {
        const double ang = std::numbers::pi * (2.0 * k + order + 1.0) / (2.0 * order);
        const cd proto(std::cos(ang), std::sin(ang));  // upper half-plane
        const cd d = 0.5 * bw * proto;
        const cd r = std::sqrt(d * d - w0_sq);
        for (const cd s : {d + r, d - r}) {
            const cd zp = (k_bilinear + s) / (k_bilinear - s);
            Biquad q;
            q.b0 = 1.0;
            q.b1 = 0.0;
            q.b2 = -1.0;
            q.a1 = -2.0 * zp.real();
            q.a2 = std::norm(zp);
            f.sections.push_back(q);
            denom *= std::norm(k_bilinear - s);
        }
    }
    const double gain =
        std::pow(bw * k_bilinear, order) / denom;  // bw^n * K^n / prod|K - s_i|^2
    f.sections.front().b0 *= gain;
    f.sections.front().b2 *= gain;
    return f;
}

// Complex frequency response at f_hz.
inline std::complex<double> sos_response(const SosFilter& f, double f_hz, double fs) {
    using cd = std::complex<double>;
    const double w = 2.0 * std::numbers::pi * f_hz / fs;
    const cd z1 = std::exp(cd(0.0, -w));
    const cd z2 = z1 * z1;
    cd h(1.0, 0.0);
    for (const Biquad& q : f.sections)
        h *= (q.b0 + q.b1 * z1 + q.b2 * z2) / (1.0 + q.a1 * z1 + q.a2 * z2);
    return h;
}

namespace detail {

// Steady-state section states for a unit-step input, direct form II
// transposed; used to suppress start-up transients.
struct SectionState {
    double z1 = 0.0, z2 = 0.0;
};

inline std::vector<SectionState> step_state(const SosFilter& f) {
    std::vector<SectionState> zi(f.sections.size());
    double scale = 1.0;  // cumulative DC gain of preceding sections
    for (std::size_t s = 0; s < f.sections.size(); ++s) {
        const Biquad& q = f.sections[s];
        const double dc = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
        zi[s].z1 = scale * (dc - q.b0);
        zi[s].z2 = scale * (q.b2 - q.a2 * dc);
        scale *= dc;
    }
    return zi;
}

inline void sosfilt_inplace(const SosFilter& f, double* x, std::size_t n,
                            std::vector<SectionState> state) {
    for (std::size_t s = 0; s < f.sections.size(); ++s) {
        const Biquad& q = f.sections[s];
        double z1 = state[s].z1, z2 = state[s].z2;
        for (std::size_t i = 0; i < n; ++i) {
            const double in = x[i];
            const double out = q.b0 * in + z1;
            z1 = q.b1 * in - q.a1 * out + z2;
            z2 = q.b2 * in - q.a2 * out;
            x[i] = out;
        }
    }
}

}  // namespace detail

// Padding the zero-phase pass needs on each side (three transient lengths of
// the cascade, counted in equivalent taps).
inline std::size_t filtfilt_padlen(const SosFilter& f) {
    return 3 * (2 * f.sections.size() + 1);
}

// Zero-phase filtering: odd-reflection padding, forward pass, backward pass,
// strip padding. Matches the standard forward-backward recipe.
inline void sosfiltfilt_inplace(const SosFilter& f, double* x, std::size_t n) {
    const std::size_t pad = filtfilt_padlen(f);
    if (n <= pad)
        throw data_error("signal of " + std::to_string(n) +
                         " samples is too short for zero-phase padding (" + std::to_string(pad) + ")");

    std::vector<double> ext(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) ext[i] = 2.0 * x[0] - x[pad - i];
    for (std::size_t i = 0; i < n; ++i) ext[pad + i] = x[i];
    for (std::size_t i = 0; i < pad; ++i) ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];

    const auto zi = detail::step_state(f);
    auto scaled = [&zi](double v) {
        auto out = zi;
        for (auto& s : out) {
            s.z1 *= v;
            s.z2 *= v;
        }
        return out;
    };

    detail::sosfilt_inplace(f, ext.data(), ext.size(), scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());
    detail::sosfilt_inplace(f, ext.data(), ext.size(), scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());
    for (std::size_t i = 0; i < n; ++i) x[i] = ext[pad + i];
}

}  // namespace plvkit::dsp
