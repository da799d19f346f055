#include "omlaser/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace omlaser {

namespace {

constexpr double kThresholdCollision = 1e-12;
constexpr double kZeroIntensity = 1e-6;
constexpr double kClassMatchRel = 0.02;

PointClass classify(const SystemParams& q, const SteadyObservables& obs) {
    if (obs.i2 < kZeroIntensity) return PointClass::Zero;
    if (q.g > 0.0) {
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            if (auto bp = nonzero_branch(q, b)) {
                const double rel = std::abs(obs.i2 - bp->intensity_a2) /
                                   std::max(bp->intensity_a2, 1e-12);
                if (rel < kClassMatchRel)
                    return b == Branch::Plus ? PointClass::Plus : PointClass::Minus;
            }
        }
    }
    return PointClass::Other;
}

// One grid point with the time budget doubling on non-convergence.
DynamicCurvePoint settle_point(const SystemParams& q, const ModeState& init,
                               const IntegratorConfig& cfg, int max_doublings,
                               ModeState* end_state) {
    DynamicCurvePoint pt;
    pt.omega = q.omega_drive;
    try {
        Trajectory traj = integrate(q, init, cfg);
        pt.obs = analyze_tail(traj, cfg.tail_fraction, cfg.stationarity_tol);
        double budget = cfg.t_end;
        for (int d = 0; d < max_doublings && !pt.obs.converged; ++d) {
            integrate_extend(q, traj, budget, cfg);
            budget *= 2.0;
            pt.obs = analyze_tail(traj, cfg.tail_fraction, cfg.stationarity_tol);
        }
        pt.cls = classify(q, pt.obs);
        if (end_state) *end_state = traj.states.back();
    } catch (const DivergenceError&) {
        pt.failed = true;
        pt.cls = PointClass::Error;
    }
    return pt;
}

}  // namespace

const char* to_string(SweepMode m) {
    switch (m) {
        case SweepMode::Fresh: return "fresh";
        case SweepMode::ContinueForward: return "continue_forward";
        case SweepMode::ContinueBackward: return "continue_backward";
    }
    return "?";
}

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Zero: return "zero";
        case PointClass::Plus: return "plus";
        case PointClass::Minus: return "minus";
        case PointClass::Other: return "other";
        case PointClass::Error: return "error";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (!(0.0 <= omega_min && omega_min < omega_max))
        throw std::invalid_argument("SweepSpec: bad drive range");
    if (steps < 2) throw std::invalid_argument("SweepSpec: steps must be >= 2");
    integrator.validate();
    if (mode == SweepMode::Fresh && !(integrator.seed_amplitude > 0.0))
        throw std::invalid_argument("SweepSpec: Fresh mode requires seed_amplitude > 0");
    if (max_budget_doublings < 0)
        throw std::invalid_argument("SweepSpec: max_budget_doublings must be >= 0");
}

void Map2DSpec::validate() const {
    if (!(0.0 <= omega_min && omega_min < omega_max))
        throw std::invalid_argument("Map2DSpec: bad drive range");
    if (!(delta_omega1_min < delta_omega1_max))
        throw std::invalid_argument("Map2DSpec: bad delta_omega1 range");
    if (omega_steps < 2 || delta_omega1_steps < 2)
        throw std::invalid_argument("Map2DSpec: grid must be at least 2x2");
    integrator.validate();
    if (!(integrator.seed_amplitude > 0.0))
        throw std::invalid_argument("Map2DSpec: seed_amplitude must be positive");
}

std::vector<double> sweep_grid(const SystemParams& p, double omega_min, double omega_max,
                               int steps) {
    const double h = (omega_max - omega_min) / (steps - 1);
    double shift = 0.0;
    if (p.g > 0.0) {
        const double wth = omega_th(p);
        for (int k = 0; k < steps; ++k) {
            if (std::abs(omega_min + h * k - wth) < kThresholdCollision) {
                shift = 0.5 * h;  // marginal stability makes settle times diverge
                break;
            }
        }
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) grid[static_cast<std::size_t>(k)] = omega_min + shift + h * k;
    return grid;
}

JumpReport locate_jump(const DynamicCurve& curve) {
    JumpReport rep;
    for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
        const double d = std::abs(curve.points[k + 1].obs.i2 - curve.points[k].obs.i2);
        if (d > rep.delta_i2) {
            rep.delta_i2 = d;
            rep.omega_lo = curve.points[k].omega;
            rep.omega_hi = curve.points[k + 1].omega;
        }
    }
    return rep;
}

DynamicCurve laser_curve_dynamic(const SystemParams& p, const SweepSpec& spec,
                                 ExecMode mode) {
    spec.validate();
    const std::vector<double> grid = sweep_grid(p, spec.omega_min, spec.omega_max, spec.steps);

    DynamicCurve curve;
    curve.points.resize(grid.size());

    if (spec.mode == SweepMode::Fresh) {
        for_each_index(grid.size(), mode, [&](std::size_t k) {
            SystemParams q = p;
            q.omega_drive = grid[k];
            const ModeState init = seeded_zero_state(q, spec.integrator.seed_amplitude);
            curve.points[k] =
                settle_point(q, init, spec.integrator, spec.max_budget_doublings, nullptr);
        });
    } else {
        // State threading makes Continue modes inherently sequential.
        std::vector<std::size_t> order(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            order[k] = spec.mode == SweepMode::ContinueForward ? k : grid.size() - 1 - k;

        SystemParams q = p;
        q.omega_drive = grid[order[0]];
        ModeState carry = seeded_zero_state(q, spec.integrator.seed_amplitude);
        for (std::size_t k : order) {
            q.omega_drive = grid[k];
            // Keep the carried state off the invariant manifold.
            if (std::abs(carry.b) < spec.integrator.seed_amplitude)
                carry.b = Complex{spec.integrator.seed_amplitude, 0.0};
            ModeState end;
            curve.points[k] =
                settle_point(q, carry, spec.integrator, spec.max_budget_doublings, &end);
            if (curve.points[k].failed)
                carry = seeded_zero_state(q, spec.integrator.seed_amplitude);
            else
                carry = end;
        }
    }

    for (const auto& pt : curve.points) curve.any_failed |= pt.failed;
    return curve;
}

Map2D map2d(const SystemParams& base, const Map2DSpec& spec, ExecMode mode) {
    spec.validate();
    Map2D map;
    map.delta_omega1_steps = spec.delta_omega1_steps;
    map.omega_steps = spec.omega_steps;
    map.cells.resize(static_cast<std::size_t>(spec.delta_omega1_steps) *
                     static_cast<std::size_t>(spec.omega_steps));

    const double hd = (spec.delta_omega1_max - spec.delta_omega1_min) /
                      (spec.delta_omega1_steps - 1);
    const double hw = (spec.omega_max - spec.omega_min) / (spec.omega_steps - 1);

    for_each_index(map.cells.size(), mode, [&](std::size_t idx) {
        const auto row = static_cast<int>(idx) / spec.omega_steps;
        const auto col = static_cast<int>(idx) % spec.omega_steps;
        SystemParams q = base;
        q.delta_omega1 = spec.delta_omega1_min + hd * row;
        q.delta_omega2 = q.delta_omega1 + spec.delta_omega2_offset;
        q.omega_drive = spec.omega_min + hw * col;

        Map2DCell& cell = map.cells[idx];
        cell.delta_omega1 = q.delta_omega1;
        cell.omega = q.omega_drive;
        cell.cls = excitation_class(q);
        const ModeState init = seeded_zero_state(q, spec.integrator.seed_amplitude);
        const DynamicCurvePoint pt =
            settle_point(q, init, spec.integrator, spec.max_budget_doublings, nullptr);
        cell.i2 = pt.obs.i2;
        cell.converged = pt.obs.converged;
        cell.failed = pt.failed;
    });

    for (const auto& c : map.cells) map.any_failed |= c.failed;
    return map;
}

HysteresisScan hysteresis_scan(const SystemParams& p, SweepSpec spec) {
    HysteresisScan scan;
    spec.mode = SweepMode::ContinueForward;
    scan.forward = laser_curve_dynamic(p, spec, ExecMode::Serial);
    spec.mode = SweepMode::ContinueBackward;
    scan.backward = laser_curve_dynamic(p, spec, ExecMode::Serial);
    scan.forward_jump = locate_jump(scan.forward);
    scan.backward_jump = locate_jump(scan.backward);
    return scan;
}

}  // namespace omlaser
