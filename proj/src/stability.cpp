#include "omlaser/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace omlaser {

namespace {

// 2x2 real block of d(c*z)/dz at rows r, cols c of the 6x6 matrix.
void put_linear(Matrix6& m, int row, int col, Complex coeff) {
    m[6 * row + col] = coeff.real();
    m[6 * row + col + 1] = -coeff.imag();
    m[6 * (row + 1) + col] = coeff.imag();
    m[6 * (row + 1) + col + 1] = coeff.real();
}

// 2x2 real block of d(c*conj(z))/dz.
void put_antilinear(Matrix6& m, int row, int col, Complex coeff) {
    m[6 * row + col] = coeff.real();
    m[6 * row + col + 1] = coeff.imag();
    m[6 * (row + 1) + col] = coeff.imag();
    m[6 * (row + 1) + col + 1] = -coeff.real();
}

double max_re_zero_branch(const SystemParams& p) {
    const auto ev = eigenvalues6(jacobian(p, zero_branch(p)));
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : ev) m = std::max(m, v.real());
    return m;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

Matrix6 jacobian(const SystemParams& p, const BranchPoint& branch) {
    const ModeState s = branch.state();
    const double res = stationary_residual(p, s, branch.delta_omega);
    const double tol = 1e-8 * std::max(1.0, p.omega_drive);
    if (!(res < tol)) {
        std::ostringstream msg;
        msg << "jacobian: branch residual " << res << " exceeds " << tol;
        throw std::invalid_argument(msg.str());
    }

    constexpr Complex I{0.0, 1.0};
    const Complex ig{0.0, p.g};
    Matrix6 m{};
    // d a1' / d(a1, a2, b)
    put_linear(m, 0, 0, -(I * p.delta_omega1 + p.gamma1));
    put_linear(m, 0, 2, -ig * s.b);
    put_linear(m, 0, 4, -ig * s.a2);
    // d a2' / d(a1, a2, b); the b-dependence enters through conj(b)
    put_linear(m, 2, 0, -ig * std::conj(s.b));
    put_linear(m, 2, 2, -(I * branch.delta2 + p.gamma2));
    put_antilinear(m, 2, 4, -ig * s.a1);
    // d b' / d(a1, a2, b); the a2-dependence enters through conj(a2)
    put_linear(m, 4, 0, -ig * std::conj(s.a2));
    put_antilinear(m, 4, 2, -ig * s.a1);
    put_linear(m, 4, 4, -(I * branch.delta_b + p.gamma_b));
    return m;
}

std::vector<Complex> eigenvalues6(const Matrix6& m) {
    Eigen::Matrix<double, 6, 6> a;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) a(r, c) = m[6 * r + c];

    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigenvalues6: solver did not converge on\n" << a;
        throw std::runtime_error(msg.str());
    }
    std::vector<Complex> ev(6);
    for (int i = 0; i < 6; ++i) ev[i] = solver.eigenvalues()(i);
    return ev;
}

StabilityReport assess(const SystemParams& p, const BranchPoint& branch) {
    StabilityReport rep;
    rep.eigenvalues = eigenvalues6(jacobian(p, branch));

    if (branch.branch != Branch::Zero) {
        // The U(1) symmetry of the nonzero branches forces one neutral mode;
        // take the eigenvalue closest to 0 provided its real part is tiny.
        int best = -1;
        double best_abs = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 6; ++i) {
            if (std::abs(rep.eigenvalues[i].real()) >= kGoldstoneTol) continue;
            const double a = std::abs(rep.eigenvalues[i]);
            if (a < best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (best >= 0) rep.goldstone_index = best;
    }

    rep.max_re_effective = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        if (rep.goldstone_index && *rep.goldstone_index == i) continue;
        rep.max_re_effective = std::max(rep.max_re_effective, rep.eigenvalues[i].real());
    }

    if (rep.max_re_effective < -kMarginTol)
        rep.verdict = Verdict::Stable;
    else if (rep.max_re_effective > kMarginTol)
        rep.verdict = Verdict::Unstable;
    else
        rep.verdict = Verdict::Marginal;
    return rep;
}

double numeric_threshold(const SystemParams& p, double omega_lo, double omega_hi) {
    if (!(omega_lo < omega_hi))
        throw std::invalid_argument("numeric_threshold: empty bracket");
    SystemParams q = p;
    q.omega_drive = omega_lo;
    double f_lo = max_re_zero_branch(q);
    q.omega_drive = omega_hi;
    double f_hi = max_re_zero_branch(q);
    if (!(f_lo < 0.0 && f_hi > 0.0))
        throw std::domain_error(
            "numeric_threshold: max Re eigenvalue does not change sign over the bracket");

    while (omega_hi - omega_lo > 1e-10) {
        const double mid = 0.5 * (omega_lo + omega_hi);
        q.omega_drive = mid;
        if (max_re_zero_branch(q) < 0.0)
            omega_lo = mid;
        else
            omega_hi = mid;
    }
    return 0.5 * (omega_lo + omega_hi);
}

}  // namespace omlaser
