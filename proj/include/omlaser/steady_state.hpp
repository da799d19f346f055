#ifndef OMLASER_STEADY_STATE_HPP
#define OMLASER_STEADY_STATE_HPP

#include <optional>
#include <vector>

#include "omlaser/model.hpp"

namespace omlaser {

enum class Branch { Zero, Plus, Minus };

enum class ExcitationClass { Soft, Hard, Boundary };

const char* to_string(Branch b);
const char* to_string(ExcitationClass c);

/// One closed-form stationary solution in the gauge Im(b) = 0, b >= 0,
/// so a2 = |a2| e^{i phi} carries the whole phase of the a2*b product.
struct BranchPoint {
    Branch branch = Branch::Zero;
    Complex a1{0.0, 0.0};
    double a2_mod = 0.0;       // |a2|
    double b_mod = 0.0;        // |b|
    double phi = 0.0;          // total phase of a2*b relative to the drive, in (-pi, pi]
    double delta_omega = 0.0;  // generated phonon frequency (0 by convention on Zero)
    double delta2 = 0.0;       // delta_omega2 + delta_omega
    double delta_b = 0.0;      // omega_b - delta_omega
    double intensity_a2 = 0.0; // |a2|^2, the principal observable

    /// State triple in the gauge above (amplitudes of the rotating ansatz).
    ModeState state() const {
        return {a1, std::polar(a2_mod, phi), Complex{b_mod, 0.0}};
    }
};

/// Max complex-component residual of the stationary equations at a candidate
/// solution with the given generated frequency. Used to certify branches.
double stationary_residual(const SystemParams& p, const ModeState& s, double delta_omega);

/// Forced oscillation of mode 1 only: a1 = -i W / (i dw1 + g1), a2 = b = 0.
BranchPoint zero_branch(const SystemParams& p);

/// Frequency lock of the nonzero branches: Delta2 = (dw2 + wb) g2 / (g2 + gb).
/// The generated frequency follows as delta_omega = Delta2 - dw2.
double delta2_locked(const SystemParams& p);

/// Existence threshold: below it the phase condition |sin phi| <= 1 fails and
/// no nonzero solution exists.
double omega_ex(const SystemParams& p);

/// Generation threshold: the drive at which the zero branch loses stability.
/// Always >= omega_ex.
double omega_th(const SystemParams& p);

/// Nonzero stationary branch (Plus or Minus sign of the intensity formula).
/// Absent when the drive is below omega_ex or the intensity would be negative.
std::optional<BranchPoint> nonzero_branch(const SystemParams& p, Branch sign);

/// Intensity jump at the generation threshold,
///   J = 2 (gb/g2) (dw1 Delta2 - g1 g2) / g^2.
/// Meaningful as a jump only when positive (hard excitation).
double jump_magnitude(const SystemParams& p);

/// Hard iff dw1 (dw2 + wb) > g1 (g2 + gb); equality within 1e-12 is Boundary.
ExcitationClass excitation_class(const SystemParams& p);

/// Limit of jump_magnitude for gamma1, gamma2 -> 0: 2 dw1 (dw2 + wb) / g^2.
double max_jump(const SystemParams& p);

struct AnalyticCurvePoint {
    double omega = 0.0;
    bool zero_stable = true;            // omega < omega_th
    std::optional<double> i2_plus;      // Plus-branch |a2|^2 where it exists
    std::optional<double> i2_minus;     // Minus-branch |a2|^2 where it exists
};

struct AnalyticCurve {
    double omega_ex = 0.0;
    double omega_th = 0.0;
    ExcitationClass cls = ExcitationClass::Soft;
    double jump = 0.0;
    std::vector<AnalyticCurvePoint> points;
};

/// Closed-form laser curve on a uniform drive grid.
/// Throws std::invalid_argument on an invalid range.
AnalyticCurve laser_curve_analytic(const SystemParams& p, double omega_min,
                                   double omega_max, int n_points);

}  // namespace omlaser

#endif
