#ifndef OMLASER_SWEEP_HPP
#define OMLASER_SWEEP_HPP

#include <vector>

#include "omlaser/dynamics.hpp"
#include "omlaser/parallel.hpp"
#include "omlaser/steady_state.hpp"

namespace omlaser {

enum class SweepMode { Fresh, ContinueForward, ContinueBackward };

const char* to_string(SweepMode m);

struct SweepSpec {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int steps = 2;                    // number of grid points
    SweepMode mode = SweepMode::Fresh;
    IntegratorConfig integrator;
    int max_budget_doublings = 2;     // per-point time budget grows up to 4x

    void validate() const;
};

struct Map2DSpec {
    double omega_min = 0.0, omega_max = 0.0;
    int omega_steps = 2;
    double delta_omega1_min = 0.0, delta_omega1_max = 0.0;
    int delta_omega1_steps = 2;
    double delta_omega2_offset = 2e-3;  // linkage dw2 = dw1 + offset
    IntegratorConfig integrator;
    int max_budget_doublings = 2;

    void validate() const;
};

enum class PointClass { Zero, Plus, Minus, Other, Error };

const char* to_string(PointClass c);

struct DynamicCurvePoint {
    double omega = 0.0;
    SteadyObservables obs;
    bool failed = false;   // integration diverged
    PointClass cls = PointClass::Other;
};

struct DynamicCurve {
    std::vector<DynamicCurvePoint> points;
    bool any_failed = false;
};

struct Map2DCell {
    double delta_omega1 = 0.0;
    double omega = 0.0;
    double i2 = 0.0;
    ExcitationClass cls = ExcitationClass::Soft;  // of the cell's parameter row
    bool converged = false;
    bool failed = false;
};

struct Map2D {
    int delta_omega1_steps = 0;
    int omega_steps = 0;
    std::vector<Map2DCell> cells;  // row-major: dw1 outer, omega inner
    bool any_failed = false;
};

struct JumpReport {
    double omega_lo = 0.0, omega_hi = 0.0;  // grid pair with the largest step
    double delta_i2 = 0.0;
};

struct HysteresisScan {
    DynamicCurve forward;
    DynamicCurve backward;
    JumpReport forward_jump;
    JumpReport backward_jump;
};

/// Drive grid of a sweep; shifted by half a step when a point would land on
/// the generation threshold, where settle times diverge.
std::vector<double> sweep_grid(const SystemParams& p, double omega_min, double omega_max,
                               int steps);

/// Largest adjacent-point intensity step of a curve.
JumpReport locate_jump(const DynamicCurve& curve);

/// Settled laser curve from time integration. Fresh points run in parallel;
/// Continue modes thread the end state from point to point and are serial.
DynamicCurve laser_curve_dynamic(const SystemParams& p, const SweepSpec& spec,
                                 ExecMode mode = ExecMode::OpenMP);

/// Settled intensity over the (drive, dw1) grid with dw2 = dw1 + offset, plus
/// the excitation class of every parameter row.
Map2D map2d(const SystemParams& base, const Map2DSpec& spec,
            ExecMode mode = ExecMode::OpenMP);

/// Forward and backward continuation scans with their largest jumps.
HysteresisScan hysteresis_scan(const SystemParams& p, SweepSpec spec);

}  // namespace omlaser

#endif
