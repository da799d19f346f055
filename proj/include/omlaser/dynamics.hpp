#ifndef OMLASER_DYNAMICS_HPP
#define OMLASER_DYNAMICS_HPP

#include <cstddef>
#include <vector>

#include "omlaser/model.hpp"

namespace omlaser {

struct IntegratorConfig {
    double dt = 0.01;                 // RK4 step, units 1/w0
    double t_end = 2.0e4;             // run length; >= 20 damping times at desk scale
    double seed_amplitude = 1e-6;     // initial real kick on b off the zero manifold
    double tail_fraction = 0.25;      // fraction of the run averaged for observables
    double stationarity_tol = 1e-6;   // relative drift allowed across the tail window
    std::size_t save_stride = 0;      // samples every this many steps; 0 = auto

    void validate() const;
};

/// Sampled states of one deterministic run.
struct Trajectory {
    double dt = 0.0;                  // sample spacing = save_stride * step
    std::vector<double> t;
    std::vector<ModeState> states;
};

struct SteadyObservables {
    double i1 = 0.0, i2 = 0.0, ib = 0.0;  // tail-averaged |a1|^2, |a2|^2, |b|^2
    double delta_omega_est = 0.0;         // -d/dt of the unwrapped phase of b
    bool converged = false;
};

/// Thrown when the state leaves the finite range mid-run.
struct DivergenceError : std::runtime_error {
    double time;
    explicit DivergenceError(double t);
};

/// Classical fixed-step RK4 on the rotating-frame equations.
Trajectory integrate(const SystemParams& p, const ModeState& init,
                     const IntegratorConfig& cfg);

/// Continues an existing trajectory for extra_time more, appending samples.
void integrate_extend(const SystemParams& p, Trajectory& traj, double extra_time,
                      const IntegratorConfig& cfg);

/// Tail-window averages, the phase-slope frequency estimate, and the
/// stationarity verdict for an existing trajectory.
SteadyObservables analyze_tail(const Trajectory& traj, double tail_fraction,
                               double stationarity_tol);

/// Zero branch plus the real seed kick on b. The kick is required because the
/// a2 = b = 0 manifold is exactly invariant.
ModeState seeded_zero_state(const SystemParams& p, double seed_amplitude);

/// integrate + analyze_tail from the seeded zero state unless an explicit
/// initial state is given. Non-convergence is reported, not thrown.
SteadyObservables settle(const SystemParams& p, const ModeState& init,
                         const IntegratorConfig& cfg);

}  // namespace omlaser

#endif
