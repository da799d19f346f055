#ifndef OMLASER_STABILITY_HPP
#define OMLASER_STABILITY_HPP

#include <array>
#include <optional>
#include <vector>

#include "omlaser/steady_state.hpp"

namespace omlaser {

enum class Verdict { Stable, Unstable, Marginal };

const char* to_string(Verdict v);

constexpr double kGoldstoneTol = 1e-9;  // |Re| below this may be the symmetry mode
constexpr double kMarginTol = 1e-9;     // verdict dead band on max Re

/// Row-major 6x6 real matrix over (Re a1, Im a1, Re a2, Im a2, Re b, Im b).
using Matrix6 = std::array<double, 36>;

struct StabilityReport {
    std::vector<Complex> eigenvalues;     // all 6, unordered
    std::optional<int> goldstone_index;   // U(1) zero mode (nonzero branches only)
    double max_re_effective = 0.0;        // largest Re excluding the Goldstone mode
    Verdict verdict = Verdict::Marginal;
};

/// Jacobian of the flow at a stationary branch, taken in the frame co-rotating
/// with the branch's generated frequency so the branch is a true fixed point
/// (detunings dw1, Delta2, Delta_b). Throws std::invalid_argument when the
/// branch does not satisfy the stationary equations.
Matrix6 jacobian(const SystemParams& p, const BranchPoint& branch);

/// All six eigenvalues of a real 6x6 matrix.
/// Throws std::runtime_error (echoing the matrix) if the solver fails.
std::vector<Complex> eigenvalues6(const Matrix6& m);

/// Spectrum, Goldstone detection and verdict for a branch.
StabilityReport assess(const SystemParams& p, const BranchPoint& branch);

/// Drive at which the zero branch loses stability, located by bisection on the
/// largest real part of the zero-branch spectrum. Requires a sign change over
/// [omega_lo, omega_hi]; the bracket is shrunk below 1e-10.
double numeric_threshold(const SystemParams& p, double omega_lo, double omega_hi);

}  // namespace omlaser

#endif
