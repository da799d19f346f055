#ifndef OMLASER_CONFIG_HPP
#define OMLASER_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "omlaser/stochastic.hpp"
#include "omlaser/sweep.hpp"

namespace omlaser {

/// Raised on malformed or invalid run configuration; the message carries the
/// file name, line number and key where that is known.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSettings {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int steps = 2;
    SweepMode mode = SweepMode::Fresh;
};

struct MapSettings {
    double omega_min = 0.0, omega_max = 0.0;
    int omega_steps = 2;
    double delta_omega1_min = 0.0, delta_omega1_max = 0.0;
    int delta_omega1_steps = 2;
    double delta_omega2_offset = 2e-3;
};

/// One run = one config file. Sections: [params] (required), [integrator],
/// [noise], [sweep], [map], [output]; unknown sections or keys are rejected.
struct RunConfig {
    SystemParams params;
    IntegratorConfig integrator;
    NoiseConfig noise;
    std::optional<SweepSettings> sweep;
    std::optional<MapSettings> map;
    std::string output_prefix;

    SweepSpec sweep_spec() const;
    Map2DSpec map_spec() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig load_config_file(const std::string& path);

}  // namespace omlaser

#endif
