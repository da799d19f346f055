#ifndef OMLASER_CSV_HPP
#define OMLASER_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "omlaser/dynamics.hpp"
#include "omlaser/steady_state.hpp"
#include "omlaser/stochastic.hpp"
#include "omlaser/sweep.hpp"

namespace omlaser {

inline constexpr const char* kArtifactVersion = "1.0";

// Every file starts with "# schema=<id> version=<v>" followed by the header
// row. Formatting is fixed so identical inputs give byte-identical bodies.

void write_analytic_curve_csv(std::ostream& out, const AnalyticCurve& curve);
void write_dynamic_curve_csv(std::ostream& out, const DynamicCurve& curve);
void write_noisy_curve_csv(std::ostream& out, const SystemParams& p,
                           const std::vector<EnsemblePoint>& curve,
                           int requested_realizations);
void write_map2d_csv(std::ostream& out, const Map2D& map);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

struct CsvTable {
    std::string schema;
    std::string version;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads back a file in the format above; throws std::runtime_error on
/// malformed input or ragged rows.
CsvTable read_csv(std::istream& in);

}  // namespace omlaser

#endif
