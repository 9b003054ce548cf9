#pragma once

// Deliberately slow, obviously-correct reference implementations used as
// oracles. They share no code with the optimized paths.

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "plvkit/types.hpp"

namespace naive {

// Direct O(n^2) DFT.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x,
                                             bool inverse = false) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(n);
            out[k] += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        if (inverse) out[k] /= static_cast<double>(n);
    }
    return out;
}

// PLV per sample, straight from the definition.
inline double plv_at_sample(const plvkit::Tensor3& phase, std::size_t i, std::size_t k,
                            std::size_t t) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < phase.trials(); ++n) {
        const double theta = phase.at(n, i, t) - phase.at(n, k, t);
        sum += std::exp(std::complex<double>(0.0, theta));
    }
    return std::abs(sum) / static_cast<double>(phase.trials());
}

// Time-averaged PLV over interior samples.
inline double plv_pair(const plvkit::Tensor3& phase, std::size_t i, std::size_t k,
                       std::size_t edge) {
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t t = edge; t < phase.samples() - edge; ++t) {
        acc += plv_at_sample(phase, i, k, t);
        ++count;
    }
    return acc / static_cast<double>(count);
}

// Full matrix via the scalar reference.
inline std::vector<double> plv_matrix(const plvkit::Tensor3& phase, std::size_t edge) {
    const std::size_t c = phase.channels();
    std::vector<double> m(c * c, 1.0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t k = 0; k < c; ++k)
            if (i != k) m[i * c + k] = plv_pair(phase, i, k, edge);
    return m;
}

}  // namespace naive
