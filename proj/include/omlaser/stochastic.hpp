#ifndef OMLASER_STOCHASTIC_HPP
#define OMLASER_STOCHASTIC_HPP

#include <cstdint>
#include <vector>

#include "omlaser/dynamics.hpp"
#include "omlaser/parallel.hpp"

namespace omlaser {

/// Additive complex white noise per mode with diffusion 2 gamma_x n_x
/// (fluctuation-dissipation shape); the occupations n_x set the scale and are
/// plain data. Identical config means identical output: every realization
/// draws from its own counter-based stream keyed by (base_seed, index).
struct NoiseConfig {
    double n1 = 1e-3, n2 = 1e-3, nb = 1e-3;  // effective occupations per mode
    double dt = 5e-3;                        // Euler-Maruyama step
    double t_end = 1e4;
    int n_realizations = 16;
    std::uint64_t base_seed = 0;
    double transient_fraction = 0.5;         // discarded before tail averaging
    std::size_t save_stride = 0;             // trajectory sampling; 0 = auto

    void validate() const;
};

struct EnsemblePoint {
    double omega = 0.0;
    double mean_i1 = 0.0, mean_i2 = 0.0, mean_ib = 0.0;  // over realizations
    double stderr_i2 = 0.0;
    int n_realizations = 0;
};

/// Euler-Maruyama trajectory of one noisy realization.
Trajectory integrate_sde(const SystemParams& p, const ModeState& init,
                         const NoiseConfig& cfg, std::uint64_t realization = 0);

/// Tail-averaged intensities of one realization (no trajectory storage).
SteadyObservables settle_sde(const SystemParams& p, const ModeState& init,
                             const NoiseConfig& cfg, std::uint64_t realization = 0);

/// Noisy laser curve: per-drive ensemble mean and standard error of the
/// tail-averaged intensities. Realizations start from the zero branch with a
/// deterministic micro-kick on b so the zero-noise limit reproduces the
/// seeded deterministic curve.
std::vector<EnsemblePoint> ensemble_curve(const SystemParams& p,
                                          const std::vector<double>& omega_points,
                                          const NoiseConfig& cfg,
                                          ExecMode mode = ExecMode::OpenMP);

}  // namespace omlaser

#endif
