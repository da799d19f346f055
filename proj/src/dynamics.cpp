#include "omlaser/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omlaser/steady_state.hpp"

namespace omlaser {

namespace {

constexpr std::size_t kAutoSampleTarget = 16384;

inline ModeState rk4_step(const SystemParams& p, const ModeState& s, double h) {
    const ModeState k1 = rhs(p, s);
    const ModeState k2 = rhs(p, s + (0.5 * h) * k1);
    const ModeState k3 = rhs(p, s + (0.5 * h) * k2);
    const ModeState k4 = rhs(p, s + h * k3);
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t effective_stride(const IntegratorConfig& cfg, std::size_t n_steps) {
    if (cfg.save_stride > 0) return cfg.save_stride;
    return std::max<std::size_t>(1, n_steps / kAutoSampleTarget);
}

double mean(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return n ? s / static_cast<double>(n) : 0.0;
}

}  // namespace

DivergenceError::DivergenceError(double t_)
    : std::runtime_error([t_] {
          std::ostringstream msg;
          msg << "state diverged (non-finite) at t = " << t_;
          return msg.str();
      }()),
      time(t_) {}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be positive");
    if (!(seed_amplitude >= 0.0))
        throw std::invalid_argument("IntegratorConfig: seed_amplitude must be non-negative");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw std::invalid_argument("IntegratorConfig: tail_fraction must be in (0,1)");
    if (!(stationarity_tol > 0.0))
        throw std::invalid_argument("IntegratorConfig: stationarity_tol must be positive");
}

Trajectory integrate(const SystemParams& p, const ModeState& init,
                     const IntegratorConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt));
    const std::size_t stride = effective_stride(cfg, n_steps);
    traj.dt = cfg.dt * static_cast<double>(stride);
    traj.t.reserve(n_steps / stride + 2);
    traj.states.reserve(n_steps / stride + 2);
    traj.t.push_back(0.0);
    traj.states.push_back(init);

    ModeState s = init;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        s = rk4_step(p, s, cfg.dt);
        if (i % stride == 0) {
            const double t = cfg.dt * static_cast<double>(i);
            if (!s.finite()) throw DivergenceError(t);
            traj.t.push_back(t);
            traj.states.push_back(s);
        }
    }
    return traj;
}

void integrate_extend(const SystemParams& p, Trajectory& traj, double extra_time,
                      const IntegratorConfig& cfg) {
    if (traj.states.empty()) throw std::invalid_argument("integrate_extend: empty trajectory");
    const auto n_steps = static_cast<std::size_t>(std::ceil(extra_time / cfg.dt));
    const auto stride = static_cast<std::size_t>(std::llround(traj.dt / cfg.dt));
    const double t0 = traj.t.back();
    ModeState s = traj.states.back();
    for (std::size_t i = 1; i <= n_steps; ++i) {
        s = rk4_step(p, s, cfg.dt);
        if (i % stride == 0) {
            const double t = t0 + cfg.dt * static_cast<double>(i);
            if (!s.finite()) throw DivergenceError(t);
            traj.t.push_back(t);
            traj.states.push_back(s);
        }
    }
}

SteadyObservables analyze_tail(const Trajectory& traj, double tail_fraction,
                               double stationarity_tol) {
    SteadyObservables obs;
    const std::size_t n = traj.states.size();
    if (n < 8) return obs;
    const auto tail_start =
        static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * static_cast<double>(n)));
    const std::size_t m = n - tail_start;
    if (m < 4) return obs;

    std::vector<double> i1(m), i2(m), ib(m);
    for (std::size_t k = 0; k < m; ++k) {
        const ModeState& s = traj.states[tail_start + k];
        i1[k] = std::norm(s.a1);
        i2[k] = std::norm(s.a2);
        ib[k] = std::norm(s.b);
    }
    obs.i1 = mean(i1.data(), m);
    obs.i2 = mean(i2.data(), m);
    obs.ib = mean(ib.data(), m);

    // Stationarity: the two halves of the tail must agree in every intensity.
    const std::size_t half = m / 2;
    bool ok = true;
    for (const auto& v : {i1, i2, ib}) {
        const double m1 = mean(v.data(), half);
        const double m2 = mean(v.data() + half, m - half);
        const double ref = std::max(0.5 * (m1 + m2), 1e-12);
        if (std::abs(m1 - m2) / ref >= stationarity_tol) ok = false;
    }
    obs.converged = ok;

    // Generated-frequency estimate: least-squares slope of the unwrapped
    // phase of b; the ansatz b ~ e^{-i dw t} makes the estimate -slope.
    if (obs.ib > 1e-20) {
        double theta = std::arg(traj.states[tail_start].b);
        double prev = theta;
        double st = 0.0, stt = 0.0, sth = 0.0, sh = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double raw = std::arg(traj.states[tail_start + k].b);
            double d = raw - prev;
            while (d > M_PI) d -= 2.0 * M_PI;
            while (d <= -M_PI) d += 2.0 * M_PI;
            theta += (k == 0) ? 0.0 : d;
            prev = raw;
            const double t = traj.t[tail_start + k];
            st += t;
            stt += t * t;
            sth += t * theta;
            sh += theta;
        }
        const double denom = static_cast<double>(m) * stt - st * st;
        if (denom > 0.0)
            obs.delta_omega_est = -((static_cast<double>(m) * sth - st * sh) / denom);
    }
    return obs;
}

ModeState seeded_zero_state(const SystemParams& p, double seed_amplitude) {
    ModeState s;
    s.a1 = zero_branch(p).a1;
    s.b = Complex{seed_amplitude, 0.0};
    return s;
}

SteadyObservables settle(const SystemParams& p, const ModeState& init,
                         const IntegratorConfig& cfg) {
    const Trajectory traj = integrate(p, init, cfg);
    return analyze_tail(traj, cfg.tail_fraction, cfg.stationarity_tol);
}

}  // namespace omlaser
