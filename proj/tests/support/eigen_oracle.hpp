#ifndef OMLASER_TESTS_SUPPORT_EIGEN_ORACLE_HPP
#define OMLASER_TESTS_SUPPORT_EIGEN_ORACLE_HPP

// Test-only eigenvalue oracle, independent of the library's solver: the
// characteristic polynomial is built by the Faddeev-LeVerrier recurrence and
// its roots found by Durand-Kerner iteration.

#include <array>
#include <complex>
#include <vector>

#include "omlaser/stability.hpp"

namespace testutil {

inline std::array<double, 7> char_poly6(const omlaser::Matrix6& a) {
    std::array<double, 7> c{};  // c[k] multiplies lambda^k
    c[6] = 1.0;
    omlaser::Matrix6 m{};
    for (int i = 0; i < 6; ++i) m[6 * i + i] = 1.0;  // M0 = I
    for (int k = 1; k <= 6; ++k) {
        omlaser::Matrix6 am{};
        for (int r = 0; r < 6; ++r)
            for (int col = 0; col < 6; ++col) {
                double s = 0.0;
                for (int j = 0; j < 6; ++j) s += a[6 * r + j] * m[6 * j + col];
                am[6 * r + col] = s;
            }
        double tr = 0.0;
        for (int i = 0; i < 6; ++i) tr += am[6 * i + i];
        c[6 - k] = -tr / k;
        m = am;
        for (int i = 0; i < 6; ++i) m[6 * i + i] += c[6 - k];
    }
    return c;
}

inline std::vector<std::complex<double>> durand_kerner6(const std::array<double, 7>& c) {
    using C = std::complex<double>;
    auto eval = [&](C x) {
        C v = c[6];
        for (int k = 5; k >= 0; --k) v = v * x + c[k];
        return v;
    };
    // Scale the spread of the initial ring to the coefficient magnitudes.
    double radius = 0.0;
    for (int k = 0; k < 6; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / (6 - k)));
    radius = std::max(radius, 1e-30);

    std::vector<C> x(6);
    const C seed{0.4, 0.9};
    C v = radius;
    for (int i = 0; i < 6; ++i) {
        v *= seed;
        x[i] = v;
    }
    for (int it = 0; it < 2000; ++it) {
        double worst = 0.0;
        for (int i = 0; i < 6; ++i) {
            C denom{1.0, 0.0};
            for (int j = 0; j < 6; ++j)
                if (j != i) denom *= x[i] - x[j];
            const C step = eval(x[i]) / denom;
            x[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14 * radius) break;
    }
    return x;
}

inline std::vector<std::complex<double>> eigenvalues_oracle(const omlaser::Matrix6& a) {
    return durand_kerner6(char_poly6(a));
}

/// Greedy matching distance between two 6-element spectra.
inline double spectrum_distance(std::vector<std::complex<double>> u,
                                std::vector<std::complex<double>> v) {
    double worst = 0.0;
    for (const auto& x : u) {
        double best = 1e300;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double d = std::abs(x - v[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        worst = std::max(worst, best);
        v.erase(v.begin() + static_cast<long>(best_j));
    }
    return worst;
}

}  // namespace testutil

#endif
