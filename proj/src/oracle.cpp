#include "omlaser/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>

#include "omlaser/rng.hpp"

namespace omlaser {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

constexpr double kDiffStep = 1e-7;   // central-difference step for the Jacobian
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 40;
constexpr double kZeroAmplitude = 1e-9;   // mid-iteration bailout onto the zero manifold
constexpr double kDedupDistance = 1e-6;
// Converged roots with every amplitude inside the dedup distance of the zero
// root are the zero root: near the generation threshold the linearization is
// close to singular and Newton otherwise accepts tiny pseudo-roots along the
// near-null direction.
constexpr double kZeroClassify = kDedupDistance;

// Unknowns: (Re a1, Im a1, Re a2, Im a2, b, delta_omega), b real by gauge.
Vec6 residual(const SystemParams& p, const Vec6& x) {
    constexpr Complex I{0.0, 1.0};
    const Complex a1{x[0], x[1]};
    const Complex a2{x[2], x[3]};
    const double b = x[4];
    const double d2 = p.delta_omega2 + x[5];
    const double db = p.omega_b - x[5];
    const Complex r1 =
        -(I * p.delta_omega1 + p.gamma1) * a1 - I * p.g * a2 * b - I * p.omega_drive;
    const Complex r2 = -(I * d2 + p.gamma2) * a2 - I * p.g * a1 * b;
    const Complex r3 = -(I * db + p.gamma_b) * Complex{b, 0.0} - I * p.g * a1 * std::conj(a2);
    Vec6 r;
    r << r1.real(), r1.imag(), r2.real(), r2.imag(), r3.real(), r3.imag();
    return r;
}

Mat6 numeric_jacobian(const SystemParams& p, const Vec6& x) {
    Mat6 j;
    for (int c = 0; c < 6; ++c) {
        Vec6 hi = x, lo = x;
        hi[c] += kDiffStep;
        lo[c] -= kDiffStep;
        j.col(c) = (residual(p, hi) - residual(p, lo)) / (2.0 * kDiffStep);
    }
    return j;
}

// On the a2 = b = 0 manifold the frequency unknown drops out and equation (for
// a1) is linear; finish the root exactly instead of fighting the singular
// Jacobian there.
OracleSolution zero_class_solution(const SystemParams& p, int iterations) {
    constexpr Complex I{0.0, 1.0};
    OracleSolution sol;
    sol.a1 = -I * p.omega_drive / (I * p.delta_omega1 + p.gamma1);
    sol.newton_iterations = iterations;
    Vec6 x;
    x << sol.a1.real(), sol.a1.imag(), 0.0, 0.0, 0.0, 0.0;
    sol.residual_norm = residual(p, x).norm();
    return sol;
}

std::optional<OracleSolution> newton_from(const SystemParams& p, Vec6 x) {
    const double tol = 1e-13 * std::max(1.0, p.omega_drive);
    double fnorm = residual(p, x).norm();
    int iterations = 0;
    while (iterations < kMaxIterations && !(fnorm < tol)) {
        if (std::max(std::abs(x[2]), std::max(std::abs(x[3]), std::abs(x[4]))) <
            kZeroAmplitude)
            return zero_class_solution(p, iterations);

        const Vec6 f = residual(p, x);
        const Vec6 step = numeric_jacobian(p, x).fullPivLu().solve(f);
        if (!step.allFinite()) return std::nullopt;

        // Damped update: halve until the residual actually decreases.
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h) {
            const Vec6 trial = x - lambda * step;
            const double trial_norm = residual(p, trial).norm();
            if (trial_norm < fnorm) {
                x = trial;
                fnorm = trial_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) return std::nullopt;
        ++iterations;
    }
    if (!(fnorm < 1e-10 * std::max(1.0, p.omega_drive))) return std::nullopt;

    OracleSolution sol;
    sol.a1 = {x[0], x[1]};
    sol.a2 = {x[2], x[3]};
    sol.b_real = x[4];
    sol.delta_omega = x[5];
    sol.residual_norm = fnorm;
    sol.newton_iterations = iterations;
    if (sol.b_real < 0.0) {
        // Gauge fix: flip b and compensate the a2 phase (theta = pi).
        sol.b_real = -sol.b_real;
        sol.a2 = -sol.a2;
    }
    if (std::abs(sol.a2) < kZeroClassify && sol.b_real < kZeroClassify)
        return zero_class_solution(p, iterations);
    return sol;
}

double angle_difference(double a, double b) {
    double d = a - b;
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    return d;
}

bool same_root(const OracleSolution& u, const OracleSolution& v) {
    const double d = std::abs(std::abs(u.a1) - std::abs(v.a1)) +
                     std::abs(std::abs(u.a2) - std::abs(v.a2)) +
                     std::abs(u.b_real - v.b_real) +
                     std::abs(u.delta_omega - v.delta_omega);
    if (d >= kDedupDistance) return false;
    if (std::abs(u.a2) < kZeroClassify) return true;  // phase is meaningless at zero
    return std::abs(angle_difference(std::arg(u.a2), std::arg(v.a2))) < kDedupDistance;
}

}  // namespace

std::vector<OracleSolution> solve_stationary(const SystemParams& p, int n_starts,
                                             std::uint64_t seed, ExecMode mode) {
    if (n_starts < 1) throw std::invalid_argument("solve_stationary: n_starts must be >= 1");

    std::vector<std::optional<OracleSolution>> found(static_cast<std::size_t>(n_starts));
    for_each_index(static_cast<std::size_t>(n_starts), mode, [&](std::size_t i) {
        RandomStream rng(seed, i);
        Vec6 x;
        for (int c = 0; c < 5; ++c) x[c] = rng.uniform(-2.0, 2.0);
        x[5] = rng.uniform(-p.omega_b, 2.0 * p.omega_b);
        found[i] = newton_from(p, x);
    });

    // Deterministic dedup in start order, then sort by the main observable.
    std::vector<OracleSolution> roots;
    for (const auto& cand : found) {
        if (!cand) continue;
        bool known = false;
        for (const auto& r : roots)
            if (same_root(r, *cand)) {
                known = true;
                break;
            }
        if (!known) roots.push_back(*cand);
    }
    std::sort(roots.begin(), roots.end(), [](const OracleSolution& u, const OracleSolution& v) {
        return std::abs(u.a2) < std::abs(v.a2);
    });
    return roots;
}

std::optional<RootMatch> match_root(const SystemParams& p, const OracleSolution& root,
                                    double tolerance) {
    const bool root_is_zero =
        std::abs(root.a2) < kZeroClassify && root.b_real < kZeroClassify;

    if (root_is_zero) {
        const BranchPoint zero = zero_branch(p);
        const double dev = std::abs(root.a1 - zero.a1);
        if (dev < tolerance) return RootMatch{Branch::Zero, dev};
        return std::nullopt;
    }

    for (Branch b : {Branch::Plus, Branch::Minus}) {
        const auto bp = nonzero_branch(p, b);
        if (!bp) continue;
        // a1 is gauge-invariant outright; a2 and b are compared in the common
        // gauge Im(b) = 0, b >= 0 shared by both representations.
        double dev = std::abs(root.a1 - bp->a1);
        dev = std::max(dev, std::abs(std::abs(root.a2) - bp->a2_mod));
        dev = std::max(dev, std::abs(root.b_real - bp->b_mod));
        dev = std::max(dev, std::abs(root.delta_omega - bp->delta_omega));
        dev = std::max(dev, std::abs(root.a2 - std::polar(bp->a2_mod, bp->phi)));
        if (dev < tolerance) return RootMatch{b, dev};
    }
    return std::nullopt;
}

}  // namespace omlaser
