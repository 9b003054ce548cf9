#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "plvkit/dsp/fft.hpp"

namespace plvkit::dsp {

// Analytic signal via the FFT method: keep DC and Nyquist, double the
// positive frequencies, zero the negative ones, inverse transform.
inline std::vector<cplx> analytic_signal(const double* x, std::size_t n) {
    std::vector<cplx> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = cplx(x[i], 0.0);
    if (n <= 1) return spec;
    fft(spec);
    const std::size_t half = n / 2;
    if (n % 2 == 0) {
        for (std::size_t k = 1; k < half; ++k) spec[k] *= 2.0;
        for (std::size_t k = half + 1; k < n; ++k) spec[k] = cplx(0.0, 0.0);
    } else {
        for (std::size_t k = 1; k <= half; ++k) spec[k] *= 2.0;
        for (std::size_t k = half + 1; k < n; ++k) spec[k] = cplx(0.0, 0.0);
    }
    ifft(spec);
    return spec;
}

// Wraps any angle into the (-pi, pi] contract.
inline double wrap_phase(double p) {
    p = std::remainder(p, 2.0 * std::numbers::pi);  // lands in [-pi, pi]
    if (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
    return p;
}

// Instantaneous phase of the analytic signal, radians in (-pi, pi].
inline void instantaneous_phase(const double* x, std::size_t n, double* out) {
    const auto a = analytic_signal(x, n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = wrap_phase(std::atan2(a[i].imag(), a[i].real()));
}

}  // namespace plvkit::dsp
