#ifndef OMLASER_TESTS_SUPPORT_COMMON_HPP
#define OMLASER_TESTS_SUPPORT_COMMON_HPP

#include <cmath>

#include "omlaser/model.hpp"
#include "omlaser/rng.hpp"

namespace testutil {

// Desk-scale parameter set used throughout: dw2 = wb = 5e-3, g1 = 1e-2,
// g2 = gb = 1e-3, g = 1e-2, with the mode-1 detuning selecting the regime
// (-4e-3 soft, 2e-3 boundary, 4e-3 hard).
inline omlaser::SystemParams desk_params(double delta_omega1, double omega_drive = 0.0) {
    omlaser::SystemParams p;
    p.delta_omega1 = delta_omega1;
    p.delta_omega2 = 5e-3;
    p.omega_b = 5e-3;
    p.gamma1 = 1e-2;
    p.gamma2 = 1e-3;
    p.gamma_b = 1e-3;
    p.g = 1e-2;
    p.omega_drive = omega_drive;
    return p;
}

inline omlaser::SystemParams soft_params(double w = 0.0) { return desk_params(-4e-3, w); }
inline omlaser::SystemParams boundary_params(double w = 0.0) { return desk_params(2e-3, w); }
inline omlaser::SystemParams hard_params(double w = 0.0) { return desk_params(4e-3, w); }

// Random-but-reproducible parameter sets with positive rates and detunings
// in [-1e-2, 1e-2].
inline omlaser::SystemParams random_params(omlaser::RandomStream& rng) {
    omlaser::SystemParams p;
    p.delta_omega1 = rng.uniform(-1e-2, 1e-2);
    p.delta_omega2 = rng.uniform(-1e-2, 1e-2);
    p.omega_b = rng.uniform(1e-3, 1e-2);
    p.gamma1 = std::pow(10.0, rng.uniform(-3.0, -1.7));
    p.gamma2 = std::pow(10.0, rng.uniform(-3.0, -1.7));
    p.gamma_b = std::pow(10.0, rng.uniform(-3.0, -1.7));
    p.g = std::pow(10.0, rng.uniform(-2.3, -1.7));
    return p;
}

inline omlaser::ModeState random_state(omlaser::RandomStream& rng, double scale = 1.0) {
    auto c = [&] { return omlaser::Complex{rng.uniform(-scale, scale), rng.uniform(-scale, scale)}; };
    return {c(), c(), c()};
}

}  // namespace testutil

#endif
