#include <doctest.h>

#include "omlaser/model.hpp"
#include "support/common.hpp"

using namespace omlaser;
using testutil::hard_params;

namespace {
constexpr double kTiny = 1e-15;
}

TEST_CASE("rhs on the zero manifold is the drive term alone") {
    const SystemParams p = hard_params(6e-3);
    const ModeState d = rhs(p, ModeState{});
    CHECK(d.a1.real() == 0.0);
    CHECK(d.a1.imag() == doctest::Approx(-6e-3).epsilon(1e-14));
    CHECK(d.a2 == Complex{0.0, 0.0});
    CHECK(d.b == Complex{0.0, 0.0});
}

TEST_CASE("undriven origin is a fixed point") {
    const SystemParams p = hard_params(0.0);
    const ModeState d = rhs(p, ModeState{});
    CHECK(std::abs(d.a1) == 0.0);
    CHECK(std::abs(d.a2) == 0.0);
    CHECK(std::abs(d.b) == 0.0);
}

TEST_CASE("rhs against a hand-evaluated point") {
    // All amplitudes 0.1 (real); each component checked by direct complex
    // arithmetic on the three equations.
    const SystemParams p = hard_params(6e-3);
    ModeState s;
    s.a1 = s.a2 = s.b = Complex{0.1, 0.0};
    const ModeState d = rhs(p, s);
    CHECK(d.a1.real() == doctest::Approx(-1e-3).epsilon(1e-12));
    CHECK(d.a1.imag() == doctest::Approx(-6.5e-3).epsilon(1e-12));
    CHECK(d.a2.real() == doctest::Approx(-1e-4).epsilon(1e-12));
    CHECK(d.a2.imag() == doctest::Approx(-6e-4).epsilon(1e-12));
    CHECK(d.b.real() == doctest::Approx(-1e-4).epsilon(1e-12));
    CHECK(d.b.imag() == doctest::Approx(-6e-4).epsilon(1e-12));
}

TEST_CASE("phase_rotate basics") {
    ModeState s;
    s.a1 = Complex{0.3, -0.2};
    s.a2 = Complex{1.0, 0.0};
    s.b = Complex{1.0, 0.0};

    const ModeState same = phase_rotate(s, 0.0);
    CHECK(same.a2 == s.a2);
    CHECK(same.b == s.b);

    const ModeState half = phase_rotate(s, M_PI);
    CHECK(half.a1 == s.a1);
    CHECK(half.a2.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(half.a2.imag()) < kTiny);
    CHECK(half.b.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(half.b.imag()) < kTiny);
}

TEST_CASE("U(1) equivariance of the rhs") {
    const SystemParams p = hard_params(6e-3);
    RandomStream rng(20240901, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const ModeState s = testutil::random_state(rng);
        const double theta = rng.uniform(-4.0, 4.0);
        const ModeState lhs = rhs(p, phase_rotate(s, theta));
        const ModeState base = rhs(p, s);
        const Complex u = std::polar(1.0, theta);
        CHECK(std::abs(lhs.a1 - base.a1) < 1e-12);
        CHECK(std::abs(lhs.a2 - base.a2 * u) < 1e-12);
        CHECK(std::abs(lhs.b - base.b * std::conj(u)) < 1e-12);
    }
}

TEST_CASE("a2 = b = 0 is exactly invariant") {
    RandomStream rng(77, 0);
    for (int trial = 0; trial < 20; ++trial) {
        SystemParams p = testutil::random_params(rng);
        p.omega_drive = rng.uniform(0.0, 1e-2);
        ModeState s;
        s.a1 = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const ModeState d = rhs(p, s);
        CHECK(d.a2 == Complex{0.0, 0.0});
        CHECK(d.b == Complex{0.0, 0.0});
    }
}

TEST_CASE("parameter validation flags bad fields") {
    SystemParams p = hard_params(1e-3);
    CHECK_NOTHROW(p.validate());
    p.gamma2 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = hard_params(1e-3);
    p.omega_drive = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = hard_params(1e-3);
    p.g = -1e-2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.g = 0.0;
    CHECK_NOTHROW(p.validate());
}
