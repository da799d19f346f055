#ifndef OMLASER_MODEL_HPP
#define OMLASER_MODEL_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace omlaser {

using Complex = std::complex<double>;

/// Model constants in units of a reference frequency w0 = 1.
/// Detunings are relative to the drive: delta_omega1 = w1 - w, delta_omega2 = w2 - w.
struct SystemParams {
    double delta_omega1 = 0.0;  // drive detuning of optical mode 1
    double delta_omega2 = 0.0;  // drive detuning of optical mode 2
    double omega_b = 0.0;       // phonon frequency
    double gamma1 = 0.0;        // damping rate, mode 1
    double gamma2 = 0.0;        // damping rate, mode 2
    double gamma_b = 0.0;       // damping rate, phonon mode
    double g = 0.0;             // photon-phonon coupling
    double omega_drive = 0.0;   // external drive amplitude (Omega)

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Complex amplitudes (a1, a2, b) in the frame rotating at the drive frequency
/// for both optical modes; b is kept in the lab frame. The set {a2 = 0, b = 0}
/// is an invariant manifold of the deterministic flow.
struct ModeState {
    Complex a1{0.0, 0.0};
    Complex a2{0.0, 0.0};
    Complex b{0.0, 0.0};

    bool finite() const {
        return std::isfinite(a1.real()) && std::isfinite(a1.imag()) &&
               std::isfinite(a2.real()) && std::isfinite(a2.imag()) &&
               std::isfinite(b.real()) && std::isfinite(b.imag());
    }
};

inline ModeState operator+(const ModeState& x, const ModeState& y) {
    return {x.a1 + y.a1, x.a2 + y.a2, x.b + y.b};
}

inline ModeState operator*(double c, const ModeState& x) {
    return {c * x.a1, c * x.a2, c * x.b};
}

/// Autonomous rotating-frame right-hand side of the mean-field equations:
///   da1/dt = -(i dw1 + g1) a1 - i g a2 b - i W
///   da2/dt = -(i dw2 + g2) a2 - i g a1 b*
///   db/dt  = -(i wb  + gb) b  - i g a1 a2*
/// Pure and reentrant.
inline ModeState rhs(const SystemParams& p, const ModeState& s) {
    constexpr Complex I{0.0, 1.0};
    ModeState d;
    d.a1 = -(I * p.delta_omega1 + p.gamma1) * s.a1 - I * p.g * s.a2 * s.b -
           I * p.omega_drive;
    d.a2 = -(I * p.delta_omega2 + p.gamma2) * s.a2 - I * p.g * s.a1 * std::conj(s.b);
    d.b = -(I * p.omega_b + p.gamma_b) * s.b - I * p.g * s.a1 * std::conj(s.a2);
    return d;
}

/// Gauge rotation of the a2/b pair: a2 -> a2 e^{i theta}, b -> b e^{-i theta}.
/// The rhs is equivariant under it; a1 and all intensities are unchanged.
inline ModeState phase_rotate(const ModeState& s, double theta) {
    const Complex u = std::polar(1.0, theta);
    return {s.a1, s.a2 * u, s.b * std::conj(u)};
}

}  // namespace omlaser

#endif
