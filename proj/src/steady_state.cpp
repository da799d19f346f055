#include "omlaser/steady_state.hpp"

#include <algorithm>
#include <cmath>

namespace omlaser {

namespace {

constexpr double kBoundaryTol = 1e-12;  // on dw1(dw2+wb) vs g1(g2+gb), units w0^2

void require_coupling(const SystemParams& p) {
    if (!(p.g > 0.0))
        throw std::domain_error("nonzero-branch formulas require g > 0");
}

}  // namespace

const char* to_string(Branch b) {
    switch (b) {
        case Branch::Zero: return "zero";
        case Branch::Plus: return "plus";
        case Branch::Minus: return "minus";
    }
    return "?";
}

const char* to_string(ExcitationClass c) {
    switch (c) {
        case ExcitationClass::Soft: return "soft";
        case ExcitationClass::Hard: return "hard";
        case ExcitationClass::Boundary: return "boundary";
    }
    return "?";
}

double stationary_residual(const SystemParams& p, const ModeState& s,
                           double delta_omega) {
    constexpr Complex I{0.0, 1.0};
    const double d2 = p.delta_omega2 + delta_omega;
    const double db = p.omega_b - delta_omega;
    const Complex r1 =
        -(I * p.delta_omega1 + p.gamma1) * s.a1 - I * p.g * s.a2 * s.b - I * p.omega_drive;
    const Complex r2 = -(I * d2 + p.gamma2) * s.a2 - I * p.g * s.a1 * std::conj(s.b);
    const Complex r3 = -(I * db + p.gamma_b) * s.b - I * p.g * s.a1 * std::conj(s.a2);
    return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

BranchPoint zero_branch(const SystemParams& p) {
    constexpr Complex I{0.0, 1.0};
    BranchPoint bp;
    bp.branch = Branch::Zero;
    bp.a1 = -I * p.omega_drive / (I * p.delta_omega1 + p.gamma1);
    bp.delta_omega = 0.0;
    bp.delta2 = p.delta_omega2;
    bp.delta_b = p.omega_b;
    return bp;
}

double delta2_locked(const SystemParams& p) {
    return (p.delta_omega2 + p.omega_b) * p.gamma2 / (p.gamma2 + p.gamma_b);
}

double omega_ex(const SystemParams& p) {
    require_coupling(p);
    const double d2 = delta2_locked(p);
    return std::abs(p.delta_omega1 * p.gamma2 + p.gamma1 * d2) *
           std::sqrt(p.gamma_b / p.gamma2) / p.g;
}

double omega_th(const SystemParams& p) {
    require_coupling(p);
    const double d2 = delta2_locked(p);
    const double s = p.delta_omega1 * p.gamma2 + p.gamma1 * d2;
    const double c = p.gamma1 * p.gamma2 - p.delta_omega1 * d2;
    return std::sqrt(p.gamma_b / p.gamma2) * std::hypot(s, c) / p.g;
}

std::optional<BranchPoint> nonzero_branch(const SystemParams& p, Branch sign) {
    require_coupling(p);
    if (sign == Branch::Zero)
        throw std::invalid_argument("nonzero_branch: sign must be Plus or Minus");
    const double W = p.omega_drive;
    if (W <= 0.0) return std::nullopt;  // the undriven system keeps only the zero branch

    const double d2 = delta2_locked(p);
    const double dw = d2 - p.delta_omega2;
    const double db = p.omega_b - dw;
    const double ratio = std::sqrt(p.gamma_b / p.gamma2);  // |a2| / |b|
    const double wex = omega_ex(p);
    if (W < wex) return std::nullopt;

    const double root = std::sqrt(std::max(0.0, W * W - wex * wex));
    const double s = sign == Branch::Plus ? 1.0 : -1.0;
    const double i2 = s * ratio * root / p.g +
                      (p.gamma_b / p.gamma2) *
                          (p.delta_omega1 * d2 - p.gamma1 * p.gamma2) / (p.g * p.g);
    if (i2 < 0.0) return std::nullopt;

    // Amplitude and phase conditions, each divided by the drive:
    //   W cos(phi) = (dw1 d2 - g1 g2)/g * ratio - g/ratio * |a2|^2
    //   W sin(phi) = (dw1 g2 + g1 d2)/g * ratio
    const double cos_w = (p.delta_omega1 * d2 - p.gamma1 * p.gamma2) / p.g * ratio -
                         p.g / ratio * i2;
    const double sin_w =
        (p.delta_omega1 * p.gamma2 + p.gamma1 * d2) / p.g * ratio;
    const double phi = std::atan2(sin_w / W, cos_w / W);

    BranchPoint bp;
    bp.branch = sign;
    bp.a2_mod = std::sqrt(i2);
    bp.b_mod = bp.a2_mod / ratio;
    bp.phi = phi;
    bp.delta_omega = dw;
    bp.delta2 = d2;
    bp.delta_b = db;
    bp.intensity_a2 = i2;
    // a1 = -(i d2 + g2)/(i g) * (a2/b*); |a2/b| stays ratio even as |a2| -> 0.
    bp.a1 = Complex{-d2, p.gamma2} / p.g * ratio * std::polar(1.0, phi);
    return bp;
}

double jump_magnitude(const SystemParams& p) {
    require_coupling(p);
    const double d2 = delta2_locked(p);
    return 2.0 * (p.gamma_b / p.gamma2) *
           (p.delta_omega1 * d2 - p.gamma1 * p.gamma2) / (p.g * p.g);
}

ExcitationClass excitation_class(const SystemParams& p) {
    const double lhs = p.delta_omega1 * (p.delta_omega2 + p.omega_b);
    const double rhs = p.gamma1 * (p.gamma2 + p.gamma_b);
    if (std::abs(lhs - rhs) <= kBoundaryTol) return ExcitationClass::Boundary;
    return lhs > rhs ? ExcitationClass::Hard : ExcitationClass::Soft;
}

double max_jump(const SystemParams& p) {
    require_coupling(p);
    return 2.0 * p.delta_omega1 * (p.delta_omega2 + p.omega_b) / (p.g * p.g);
}

AnalyticCurve laser_curve_analytic(const SystemParams& p, double omega_min,
                                   double omega_max, int n_points) {
    if (!(0.0 <= omega_min) || !(omega_min < omega_max) || n_points < 2)
        throw std::invalid_argument("laser_curve_analytic: bad drive range");

    AnalyticCurve curve;
    curve.omega_ex = omega_ex(p);
    curve.omega_th = omega_th(p);
    curve.cls = excitation_class(p);
    curve.jump = jump_magnitude(p);
    curve.points.reserve(static_cast<std::size_t>(n_points));

    SystemParams q = p;
    const double h = (omega_max - omega_min) / (n_points - 1);
    for (int k = 0; k < n_points; ++k) {
        q.omega_drive = omega_min + h * k;
        AnalyticCurvePoint pt;
        pt.omega = q.omega_drive;
        pt.zero_stable = q.omega_drive < curve.omega_th;
        if (auto plus = nonzero_branch(q, Branch::Plus)) pt.i2_plus = plus->intensity_a2;
        if (auto minus = nonzero_branch(q, Branch::Minus)) pt.i2_minus = minus->intensity_a2;
        curve.points.push_back(pt);
    }
    return curve;
}

}  // namespace omlaser
