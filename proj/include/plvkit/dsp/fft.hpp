#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "plvkit/errors.hpp"

namespace plvkit::dsp {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Precomputed tables for one transform length. Plans are immutable after
// construction and shared across threads.
struct FftPlan {
    std::size_t n = 0;
    // Power-of-two machinery (always present; for non-pow2 n these tables
    // belong to the Bluestein convolution length m).
    std::vector<cplx> twiddle;           // exp(-2*pi*i*k/len), k < len/2
    std::vector<std::uint32_t> bitrev;
    // Bluestein extras, empty when n is a power of two.
    std::size_t m = 0;                   // convolution length (power of two)
    std::vector<cplx> chirp;             // exp(-i*pi*k^2/n), k < n
    std::vector<cplx> kernel_fft;        // FFT_m of the wrapped conjugate chirp
    std::shared_ptr<const FftPlan> sub;  // plan for length m
};

inline void fill_pow2_tables(FftPlan& p, std::size_t len) {
    p.twiddle.resize(len / 2);
    for (std::size_t k = 0; k < len / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
        p.twiddle[k] = cplx(std::cos(ang), std::sin(ang));
    }
    p.bitrev.assign(len, 0);
    std::uint32_t j = 0;
    for (std::size_t i = 1; i < len; ++i) {
        std::size_t bit = len >> 1;
        for (; j & bit; bit >>= 1) j = static_cast<std::uint32_t>(j ^ bit);
        j = static_cast<std::uint32_t>(j | bit);
        p.bitrev[i] = j;
    }
}

// In-place radix-2 transform over a power-of-two length given its plan.
inline void fft_pow2(const FftPlan& p, cplx* a, std::size_t len, bool inverse) {
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t j = p.bitrev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t half = 1; half < len; half <<= 1) {
        const std::size_t step = len / (2 * half);
        for (std::size_t block = 0; block < len; block += 2 * half) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = p.twiddle[k * step];
                if (inverse) w = std::conj(w);
                const cplx u = a[block + k];
                const cplx v = a[block + k + half] * w;
                a[block + k] = u + v;
                a[block + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(len);
        for (std::size_t i = 0; i < len; ++i) a[i] *= scale;
    }
}

inline std::shared_ptr<const FftPlan> plan_for(std::size_t n);

inline std::shared_ptr<const FftPlan> make_plan(std::size_t n) {
    auto p = std::make_shared<FftPlan>();
    p->n = n;
    if (is_pow2(n)) {
        fill_pow2_tables(*p, n);
        return p;
    }
    // Bluestein: DFT_n as a circular convolution of length m >= 2n-1.
    const std::size_t m = next_pow2(2 * n - 1);
    p->m = m;
    p->sub = plan_for(m);
    p->chirp.resize(n);
    const auto nn = static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 0; k < nn; ++k) {
        // k^2 mod 2n keeps the angle argument small for large k.
        const std::uint64_t q = (k * k) % (2 * nn);
        const double ang = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
        p->chirp[k] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> b(m, cplx(0.0, 0.0));
    b[0] = std::conj(p->chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(p->chirp[k]);
        b[m - k] = b[k];
    }
    fft_pow2(*p->sub, b.data(), m, false);
    p->kernel_fft = std::move(b);
    return p;
}

inline std::shared_ptr<const FftPlan> plan_for(std::size_t n) {
    static std::mutex mu;
    static std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto plan = make_plan(n);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(plan));
    return it->second;
}

inline void transform(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    auto plan = plan_for(n);
    if (is_pow2(n)) {
        fft_pow2(*plan, a.data(), n, inverse);
        return;
    }
    // DFT via Bluestein; the inverse is dft(conj)/n conjugated back.
    if (inverse) {
        for (auto& z : a) z = std::conj(z);
    }
    std::vector<cplx> work(plan->m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) work[k] = a[k] * plan->chirp[k];
    fft_pow2(*plan->sub, work.data(), plan->m, false);
    for (std::size_t k = 0; k < plan->m; ++k) work[k] *= plan->kernel_fft[k];
    fft_pow2(*plan->sub, work.data(), plan->m, true);
    for (std::size_t k = 0; k < n; ++k) a[k] = work[k] * plan->chirp[k];
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& z : a) z = std::conj(z) * scale;
    }
}

}  // namespace detail

// In-place forward DFT, any length.
inline void fft(std::vector<cplx>& a) { detail::transform(a, false); }

// In-place inverse DFT (includes the 1/n scale), any length.
inline void ifft(std::vector<cplx>& a) { detail::transform(a, true); }

}  // namespace plvkit::dsp
