#include "omlaser/csv.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace omlaser {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void schema_line(std::ostream& out, const char* id) {
    out << "# schema=" << id << " version=" << kArtifactVersion << "\n";
}

}  // namespace

void write_analytic_curve_csv(std::ostream& out, const AnalyticCurve& curve) {
    schema_line(out, "curve_analytic");
    out << "omega,i2_zero,zero_stable,i2_plus,i2_minus\n";
    for (const auto& pt : curve.points) {
        out << num(pt.omega) << ",0," << (pt.zero_stable ? 1 : 0) << ','
            << (pt.i2_plus ? num(*pt.i2_plus) : "nan") << ','
            << (pt.i2_minus ? num(*pt.i2_minus) : "nan") << '\n';
    }
}

void write_dynamic_curve_csv(std::ostream& out, const DynamicCurve& curve) {
    schema_line(out, "curve_dynamic");
    out << "omega,i1,i2,ib,delta_omega_est,converged,branch_class\n";
    for (const auto& pt : curve.points) {
        out << num(pt.omega) << ',' << num(pt.obs.i1) << ',' << num(pt.obs.i2) << ','
            << num(pt.obs.ib) << ',' << num(pt.obs.delta_omega_est) << ','
            << (pt.obs.converged ? 1 : 0) << ',' << to_string(pt.cls) << '\n';
    }
}

void write_noisy_curve_csv(std::ostream& out, const SystemParams& p,
                           const std::vector<EnsemblePoint>& curve,
                           int requested_realizations) {
    schema_line(out, "curve_noisy");
    out << "omega,i1,i2,ib,delta_omega_est,converged,branch_class,"
           "mean_i2,stderr_i2,n_realizations\n";
    SystemParams q = p;
    for (const auto& pt : curve) {
        q.omega_drive = pt.omega;
        const char* cls = "other";
        if (pt.mean_i2 < 1e-6) {
            cls = "zero";
        } else if (q.g > 0.0) {
            if (auto plus = nonzero_branch(q, Branch::Plus)) {
                if (std::abs(pt.mean_i2 - plus->intensity_a2) <
                    0.1 * std::max(plus->intensity_a2, 1e-12))
                    cls = "plus";
            }
        }
        const bool full = pt.n_realizations == requested_realizations;
        out << num(pt.omega) << ',' << num(pt.mean_i1) << ',' << num(pt.mean_i2) << ','
            << num(pt.mean_ib) << ",nan," << (full ? 1 : 0) << ',' << cls << ','
            << num(pt.mean_i2) << ',' << num(pt.stderr_i2) << ',' << pt.n_realizations
            << '\n';
    }
}

void write_map2d_csv(std::ostream& out, const Map2D& map) {
    schema_line(out, "map2d");
    out << "delta_omega1,omega,i2,class,converged\n";
    for (const auto& c : map.cells) {
        out << num(c.delta_omega1) << ',' << num(c.omega) << ','
            << (c.failed ? "nan" : num(c.i2)) << ',' << to_string(c.cls) << ','
            << (c.converged ? 1 : 0) << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    schema_line(out, "trajectory");
    out << "t,re_a1,im_a1,re_a2,im_a2,re_b,im_b,i1,i2,ib\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const ModeState& s = traj.states[k];
        out << num(traj.t[k]) << ',' << num(s.a1.real()) << ',' << num(s.a1.imag()) << ','
            << num(s.a2.real()) << ',' << num(s.a2.imag()) << ',' << num(s.b.real()) << ','
            << num(s.b.imag()) << ',' << num(std::norm(s.a1)) << ',' << num(std::norm(s.a2))
            << ',' << num(std::norm(s.b)) << '\n';
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# schema=", 0) != 0)
        throw std::runtime_error("csv: missing schema comment line");
    {
        std::istringstream meta(line.substr(2));
        std::string field;
        while (meta >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = field.substr(0, eq);
            if (key == "schema") table.schema = field.substr(eq + 1);
            if (key == "version") table.version = field.substr(eq + 1);
        }
        if (table.schema.empty()) throw std::runtime_error("csv: schema id missing");
    }

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    };

    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header row");
    table.header = split(line);
    if (table.header.empty()) throw std::runtime_error("csv: empty header row");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = split(line);
        if (row.size() != table.header.size())
            throw std::runtime_error("csv: ragged row '" + line + "'");
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace omlaser
