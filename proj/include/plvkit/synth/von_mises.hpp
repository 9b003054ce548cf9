#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "plvkit/errors.hpp"
#include "plvkit/synth/rng.hpp"

namespace plvkit::synth {

// Mean resultant length of a von Mises distribution: I1(kappa)/I0(kappa).
// Power series below 50, asymptotic ratio above (where the Bessel values
// themselves would overflow long before the ratio stops being well-behaved).
inline double expected_plv(double kappa) {
    if (std::isnan(kappa) || kappa < 0.0)
        throw config_error("von Mises concentration must be >= 0");
    if (std::isinf(kappa)) return 1.0;
    if (kappa == 0.0) return 0.0;
    if (kappa < 50.0) {
        const double y = 0.25 * kappa * kappa;  // (kappa/2)^2
        double term0 = 1.0, term1 = 1.0;
        double i0 = 1.0, i1 = 1.0;  // i1 scaled by 2/kappa
        for (int k = 1; k < 400; ++k) {
            term0 *= y / (static_cast<double>(k) * k);
            term1 *= y / (static_cast<double>(k) * (k + 1.0));
            i0 += term0;
            i1 += term1;
            if (term0 < i0 * 1e-18 && term1 < i1 * 1e-18) break;
        }
        return 0.5 * kappa * i1 / i0;
    }
    const double x1 = 1.0 / kappa;
    const double x2 = x1 * x1;
    return 1.0 - 0.5 * x1 - 0.125 * x2 - 0.125 * x2 * x1 - (25.0 / 128.0) * x2 * x2;
}

// Best-Fisher rejection sampler, von Mises(mu, kappa), result in (-pi, pi].
inline double sample_von_mises(Rng& rng, double mu, double kappa) {
    if (std::isnan(kappa) || kappa < 0.0)
        throw config_error("von Mises concentration must be >= 0");

    double theta;
    if (std::isinf(kappa)) {
        theta = 0.0;
    } else if (kappa < 1e-10) {
        theta = rng.next_angle() - std::numbers::pi;
    } else {
        const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
        const double r = (1.0 + rho * rho) / (2.0 * rho);
        double f;
        while (true) {
            const double z = std::cos(std::numbers::pi * rng.next_double());
            f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            const double u2 = rng.next_open();
            if (c * (2.0 - c) - u2 > 0.0) break;
            if (std::log(c / u2) + 1.0 - c >= 0.0) break;
        }
        theta = (rng.next_double() < 0.5 ? -1.0 : 1.0) * std::acos(f);
    }

    double angle = mu + theta;
    angle = std::remainder(angle, 2.0 * std::numbers::pi);  // [-pi, pi]
    if (angle <= -std::numbers::pi) angle += 2.0 * std::numbers::pi;
    return angle;
}

}  // namespace plvkit::synth
