#include "omlaser/model.hpp"

namespace omlaser {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("SystemParams: " + what);
}

}  // namespace

void SystemParams::validate() const {
    for (double v : {delta_omega1, delta_omega2, omega_b, gamma1, gamma2, gamma_b, g,
                     omega_drive}) {
        require(std::isfinite(v), "all values must be finite");
    }
    require(gamma1 > 0.0, "gamma1 must be positive");
    require(gamma2 > 0.0, "gamma2 must be positive");
    require(gamma_b > 0.0, "gamma_b must be positive");
    // g = 0 is accepted so decoupled-mode checks (decay laws, noise
    // calibration) can run on the same type; the threshold and branch
    // formulas additionally require g > 0 and enforce it themselves.
    require(g >= 0.0, "g must be non-negative");
    require(omega_drive >= 0.0, "omega_drive must be non-negative");
}

}  // namespace omlaser
