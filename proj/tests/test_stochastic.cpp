#include <doctest.h>

#include <cmath>

#include "omlaser/rng.hpp"
#include "omlaser/steady_state.hpp"
#include "omlaser/stochastic.hpp"
#include "support/common.hpp"

using namespace omlaser;
using testutil::hard_params;

TEST_CASE("zero diffusion reduces to explicit Euler, step for step") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig cfg;
    cfg.n1 = cfg.n2 = cfg.nb = 0.0;
    cfg.dt = 5e-3;
    cfg.t_end = 100.0;
    cfg.save_stride = 1;
    const ModeState init = seeded_zero_state(p, 1e-6);
    const Trajectory traj = integrate_sde(p, init, cfg);

    ModeState s = init;
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
        const ModeState d = rhs(p, s);
        s.a1 += cfg.dt * d.a1;
        s.a2 += cfg.dt * d.a2;
        s.b += cfg.dt * d.b;
        CHECK(std::abs(traj.states[k].a1 - s.a1) < 1e-12);
        CHECK(std::abs(traj.states[k].a2 - s.a2) < 1e-12);
        CHECK(std::abs(traj.states[k].b - s.b) < 1e-12);
    }
}

TEST_CASE("identical config gives identical realizations") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig cfg;
    cfg.t_end = 2e3;
    cfg.base_seed = 99;
    const ModeState init = seeded_zero_state(p, 1e-6);
    const Trajectory a = integrate_sde(p, init, cfg, 3);
    const Trajectory b = integrate_sde(p, init, cfg, 3);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        CHECK(a.states[k].a1 == b.states[k].a1);
        CHECK(a.states[k].a2 == b.states[k].a2);
        CHECK(a.states[k].b == b.states[k].b);
    }

    // Different realization index, different path.
    const Trajectory c = integrate_sde(p, init, cfg, 4);
    CHECK(std::abs(c.states.back().a2 - a.states.back().a2) > 0.0);
}

TEST_CASE("Ornstein-Uhlenbeck calibration of the noise scaling") {
    // g = 0 decouples the modes; each is a driven-free oscillator whose
    // stationary mean square must equal its occupation.
    SystemParams p;
    p.delta_omega1 = 3e-3;
    p.delta_omega2 = -2e-3;
    p.omega_b = 5e-3;
    p.gamma1 = p.gamma2 = p.gamma_b = 1e-2;
    p.g = 0.0;
    p.omega_drive = 0.0;

    NoiseConfig cfg;
    cfg.n1 = 0.5;
    cfg.n2 = 0.3;
    cfg.nb = 0.8;
    cfg.dt = 5e-3;
    cfg.t_end = 1e4;
    cfg.base_seed = 7;
    const int reals = 8;

    double m1 = 0.0, m2 = 0.0, mb = 0.0;
    std::vector<double> i1s, i2s, ibs;
    for (int r = 0; r < reals; ++r) {
        const SteadyObservables obs = settle_sde(p, ModeState{}, cfg, r);
        i1s.push_back(obs.i1);
        i2s.push_back(obs.i2);
        ibs.push_back(obs.ib);
        m1 += obs.i1 / reals;
        m2 += obs.i2 / reals;
        mb += obs.ib / reals;
    }
    auto stderr_of = [&](const std::vector<double>& v, double mean) {
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / (v.size() - 1.0) / v.size());
    };
    CHECK(std::abs(m1 - cfg.n1) < 3.0 * stderr_of(i1s, m1) + 0.01 * cfg.n1);
    CHECK(std::abs(m2 - cfg.n2) < 3.0 * stderr_of(i2s, m2) + 0.01 * cfg.n2);
    CHECK(std::abs(mb - cfg.nb) < 3.0 * stderr_of(ibs, mb) + 0.01 * cfg.nb);
    // The estimate must also be tight enough to mean something.
    CHECK(stderr_of(i1s, m1) / cfg.n1 < 0.2);
}

TEST_CASE("noise alone seeds the instability above threshold") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1e4;
    cfg.base_seed = 5;
    // Initial state exactly on the invariant manifold: no deterministic kick.
    ModeState init;
    init.a1 = zero_branch(p).a1;
    const SteadyObservables obs = settle_sde(p, init, cfg, 0);
    CHECK(obs.i2 > 0.3);
}

TEST_CASE("vanishing noise recovers the deterministic curve") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig quiet;
    quiet.n1 = quiet.n2 = quiet.nb = 0.0;
    quiet.dt = 5e-3;
    quiet.t_end = 2e4;
    NoiseConfig faint = quiet;
    faint.n1 = faint.n2 = faint.nb = 1e-8;
    faint.base_seed = 12;
    const ModeState init = seeded_zero_state(p, 1e-6);
    const SteadyObservables det = settle_sde(p, init, quiet, 0);
    const SteadyObservables sto = settle_sde(p, init, faint, 0);
    CHECK(det.i2 == doctest::Approx(0.3615339).epsilon(5e-3));
    CHECK(std::abs(sto.i2 - det.i2) < 1e-3);
}

TEST_CASE("ensemble mean near the deterministic branch value") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1e4;
    cfg.n_realizations = 8;
    cfg.base_seed = 31;
    const auto curve = ensemble_curve(p, {5e-3, 6e-3}, cfg);
    REQUIRE(curve.size() == 2);
    CHECK(curve[1].mean_i2 == doctest::Approx(0.3615339).epsilon(0.10));
    CHECK(curve[1].n_realizations == 8);
    CHECK(curve[0].mean_i2 < 0.05);  // below threshold: noise floor only
}

TEST_CASE("ensemble curve is identical in serial and parallel") {
    const SystemParams p = hard_params(6e-3);
    NoiseConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 2e3;
    cfg.n_realizations = 4;
    cfg.base_seed = 17;
    const std::vector<double> grid{4.5e-3, 5.5e-3, 6.5e-3, 7.5e-3};
    const auto serial = ensemble_curve(p, grid, cfg, ExecMode::Serial);
    const auto parallel = ensemble_curve(p, grid, cfg, ExecMode::OpenMP);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].mean_i2 == parallel[k].mean_i2);
        CHECK(serial[k].stderr_i2 == parallel[k].stderr_i2);
        CHECK(serial[k].mean_i1 == parallel[k].mean_i1);
        CHECK(serial[k].mean_ib == parallel[k].mean_ib);
    }
}

TEST_CASE("noise config validation") {
    NoiseConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.n_realizations = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = NoiseConfig{};
    cfg.nb = -1e-3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = NoiseConfig{};
    cfg.transient_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    const SystemParams p = hard_params(6e-3);
    CHECK_THROWS_AS(ensemble_curve(p, {5e-3}, NoiseConfig{}), std::invalid_argument);
}
