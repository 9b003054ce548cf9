#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace plvkit::synth {

// SplitMix64 output mix. Pure integer arithmetic, identical on every platform.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: draw n is mix64(seed + (n+1)*gamma), so the stream
// is random-access and two generators with the same seed always agree.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_open() { return 1.0 - next_double(); }

    // Uniform angle in [0, 2*pi).
    double next_angle() { return 2.0 * std::numbers::pi * next_double(); }

    // Standard normal via Box-Muller (one draw per call, pair not cached so the
    // stream position stays a pure function of the call count).
    double next_normal() {
        const double u1 = next_open();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

// Derives an independent child seed from (seed, stream id). Used to give every
// trial/channel its own stream so parallel generation stays deterministic.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ULL));
}

}  // namespace plvkit::synth
