#ifndef OMLASER_ORACLE_HPP
#define OMLASER_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "omlaser/parallel.hpp"
#include "omlaser/steady_state.hpp"

namespace omlaser {

/// One root of the stationary system found by Newton iteration, in the gauge
/// Im(b) = 0, b >= 0. Deliberately independent of the closed-form branch
/// formulas: the six real equations are solved with a purely numerical
/// (central-difference) Jacobian, with the generated frequency as an unknown.
struct OracleSolution {
    Complex a1{0.0, 0.0};
    Complex a2{0.0, 0.0};
    double b_real = 0.0;
    double delta_omega = 0.0;
    double residual_norm = 0.0;
    int newton_iterations = 0;
};

/// All distinct roots reached from n_starts random initial guesses
/// (amplitudes uniform in [-2,2], delta_omega in [-wb, 2wb]), deduplicated on
/// the gauge-invariant coordinates (|a1|, |a2|, b, delta_omega, phase of a2).
/// Failed starts are dropped; the result is sorted by |a2|.
std::vector<OracleSolution> solve_stationary(const SystemParams& p, int n_starts,
                                             std::uint64_t seed,
                                             ExecMode mode = ExecMode::OpenMP);

struct RootMatch {
    Branch branch = Branch::Zero;
    double deviation = 0.0;    // max gauge-invariant coordinate difference
};

/// Matches a Newton root against the closed-form branches (comparison helper;
/// the solver itself never touches those formulas). Returns nothing when the
/// root corresponds to no predicted branch within the given tolerance.
std::optional<RootMatch> match_root(const SystemParams& p, const OracleSolution& root,
                                    double tolerance = 1e-8);

}  // namespace omlaser

#endif
