#include "omlaser/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "omlaser/rng.hpp"
#include "omlaser/steady_state.hpp"

namespace omlaser {

namespace {

constexpr std::size_t kAutoSampleTarget = 16384;
constexpr double kMicroSeed = 1e-6;  // keeps the zero-noise limit off the invariant manifold

struct NoiseAmplitudes {
    // Per-quadrature standard deviations sqrt(gamma_x n_x dt); the complex
    // increment then has variance 2 gamma_x n_x dt as required.
    double s1, s2, sb;
    bool active;
};

NoiseAmplitudes amplitudes(const SystemParams& p, const NoiseConfig& cfg) {
    NoiseAmplitudes a{};
    a.s1 = std::sqrt(p.gamma1 * cfg.n1 * cfg.dt);
    a.s2 = std::sqrt(p.gamma2 * cfg.n2 * cfg.dt);
    a.sb = std::sqrt(p.gamma_b * cfg.nb * cfg.dt);
    a.active = cfg.n1 > 0.0 || cfg.n2 > 0.0 || cfg.nb > 0.0;
    return a;
}

inline void em_step(const SystemParams& p, ModeState& s, double dt,
                    const NoiseAmplitudes& na, RandomStream& rng) {
    const ModeState d = rhs(p, s);
    s.a1 += dt * d.a1;
    s.a2 += dt * d.a2;
    s.b += dt * d.b;
    if (na.active) {
        const auto [x1, y1] = rng.normal_pair();
        const auto [x2, y2] = rng.normal_pair();
        const auto [xb, yb] = rng.normal_pair();
        s.a1 += Complex{na.s1 * x1, na.s1 * y1};
        s.a2 += Complex{na.s2 * x2, na.s2 * y2};
        s.b += Complex{na.sb * xb, na.sb * yb};
    }
}

}  // namespace

void NoiseConfig::validate() const {
    if (!(n1 >= 0.0 && n2 >= 0.0 && nb >= 0.0))
        throw std::invalid_argument("NoiseConfig: occupations must be non-negative");
    if (!(dt > 0.0)) throw std::invalid_argument("NoiseConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("NoiseConfig: t_end must be positive");
    if (n_realizations < 1)
        throw std::invalid_argument("NoiseConfig: n_realizations must be >= 1");
    if (!(transient_fraction > 0.0 && transient_fraction < 1.0))
        throw std::invalid_argument("NoiseConfig: transient_fraction must be in (0,1)");
}

Trajectory integrate_sde(const SystemParams& p, const ModeState& init,
                         const NoiseConfig& cfg, std::uint64_t realization) {
    cfg.validate();
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt));
    const std::size_t stride =
        cfg.save_stride > 0 ? cfg.save_stride
                            : std::max<std::size_t>(1, n_steps / kAutoSampleTarget);

    Trajectory traj;
    traj.dt = cfg.dt * static_cast<double>(stride);
    traj.t.reserve(n_steps / stride + 2);
    traj.states.reserve(n_steps / stride + 2);
    traj.t.push_back(0.0);
    traj.states.push_back(init);

    const NoiseAmplitudes na = amplitudes(p, cfg);
    RandomStream rng(cfg.base_seed, realization);
    ModeState s = init;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        em_step(p, s, cfg.dt, na, rng);
        if (i % stride == 0) {
            const double t = cfg.dt * static_cast<double>(i);
            if (!s.finite()) throw DivergenceError(t);
            traj.t.push_back(t);
            traj.states.push_back(s);
        }
    }
    return traj;
}

SteadyObservables settle_sde(const SystemParams& p, const ModeState& init,
                             const NoiseConfig& cfg, std::uint64_t realization) {
    cfg.validate();
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt));
    const auto tail_start = static_cast<std::size_t>(
        std::ceil(cfg.transient_fraction * static_cast<double>(n_steps)));

    const NoiseAmplitudes na = amplitudes(p, cfg);
    RandomStream rng(cfg.base_seed, realization);
    ModeState s = init;
    double i1 = 0.0, i2 = 0.0, ib = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        em_step(p, s, cfg.dt, na, rng);
        if (i > tail_start) {
            i1 += std::norm(s.a1);
            i2 += std::norm(s.a2);
            ib += std::norm(s.b);
            ++count;
        }
        if ((i & 0xfff) == 0 && !s.finite())
            throw DivergenceError(cfg.dt * static_cast<double>(i));
    }
    if (!s.finite()) throw DivergenceError(cfg.t_end);

    SteadyObservables obs;
    if (count > 0) {
        obs.i1 = i1 / static_cast<double>(count);
        obs.i2 = i2 / static_cast<double>(count);
        obs.ib = ib / static_cast<double>(count);
    }
    obs.converged = true;  // ensemble averaging replaces the stationarity test
    return obs;
}

std::vector<EnsemblePoint> ensemble_curve(const SystemParams& p,
                                          const std::vector<double>& omega_points,
                                          const NoiseConfig& cfg, ExecMode mode) {
    cfg.validate();
    if (omega_points.size() < 2)
        throw std::invalid_argument("ensemble_curve: need at least two drive points");

    const std::size_t n_pts = omega_points.size();
    const auto reals = static_cast<std::size_t>(cfg.n_realizations);
    std::vector<SteadyObservables> runs(n_pts * reals);
    std::vector<char> failed(n_pts * reals, 0);

    for_each_index(n_pts * reals, mode, [&](std::size_t task) {
        const std::size_t pt = task / reals;
        const std::size_t r = task % reals;
        SystemParams q = p;
        q.omega_drive = omega_points[pt];
        try {
            const ModeState init = seeded_zero_state(q, kMicroSeed);
            runs[task] = settle_sde(q, init, cfg, r);
        } catch (const DivergenceError&) {
            failed[task] = 1;
        }
    });

    std::vector<EnsemblePoint> curve(n_pts);
    for (std::size_t pt = 0; pt < n_pts; ++pt) {
        EnsemblePoint& e = curve[pt];
        e.omega = omega_points[pt];
        std::vector<double> i2s;
        i2s.reserve(reals);
        for (std::size_t r = 0; r < reals; ++r) {
            const std::size_t task = pt * reals + r;
            if (failed[task]) continue;
            i2s.push_back(runs[task].i2);
            e.mean_i1 += runs[task].i1;
            e.mean_ib += runs[task].ib;
        }
        e.n_realizations = static_cast<int>(i2s.size());
        if (e.n_realizations == 0) continue;
        const double n = static_cast<double>(e.n_realizations);
        for (double v : i2s) e.mean_i2 += v;
        e.mean_i1 /= n;
        e.mean_i2 /= n;
        e.mean_ib /= n;
        if (e.n_realizations > 1) {
            double ss = 0.0;
            for (double v : i2s) ss += (v - e.mean_i2) * (v - e.mean_i2);
            e.stderr_i2 = std::sqrt(ss / (n - 1.0) / n);
        }
    }
    return curve;
}

}  // namespace omlaser
