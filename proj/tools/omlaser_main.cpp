// omlaser: three-mode optomechanical laser model runner.
// Subcommands map onto the library: closed-form thresholds, laser curves
// (analytic / time-integrated / noisy ensemble), the drive x detuning map,
// branch stability reports, the multi-start stationary-root solver, and raw
// trajectory export. One config file drives a run; flags only select the
// subcommand, output prefix and execution details.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "omlaser/config.hpp"
#include "omlaser/csv.hpp"
#include "omlaser/oracle.hpp"
#include "omlaser/stability.hpp"

namespace {

using namespace omlaser;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_prefix;       // overrides [output] prefix when set
    int threads = 0;              // 0: leave the OpenMP default
    bool serial = false;
};

ExecMode exec_mode(const CommonOpts& opts) {
    return opts.serial ? ExecMode::Serial : ExecMode::OpenMP;
}

std::string resolve_prefix(const CommonOpts& opts, const RunConfig& cfg) {
    if (!opts.out_prefix.empty()) return opts.out_prefix;
    if (!cfg.output_prefix.empty()) return cfg.output_prefix;
    return "out";
}

std::ofstream open_output(const std::string& prefix, const std::string& suffix) {
    const std::filesystem::path path(prefix + suffix);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    std::cerr << "wrote " << path.string() << "\n";
    return out;
}

void apply_thread_options(const CommonOpts& opts) {
    if (opts.threads > 0) {
        const std::string v = std::to_string(opts.threads);
        setenv("OMLASER_THREADS", v.c_str(), 1);
    }
}

std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void emit_plot_script(const std::string& prefix) {
    std::ofstream out(prefix + "_plot.py");
    out << R"(#!/usr/bin/env python3
"""Plots whatever CSV outputs exist next to this script's prefix."""
import csv, os

prefix = os.path.splitext(os.path.abspath(__file__))[0]
prefix = prefix[:-5] if prefix.endswith("_plot") else prefix
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

def load(path):
    with open(path) as f:
        schema = f.readline().strip()
        rows = list(csv.DictReader(f))
    return schema, rows

def val(row, key):
    try:
        return float(row[key])
    except ValueError:
        return float("nan")

for suffix, style in [("_curve_analytic.csv", "analytic"),
                      ("_curve_dynamic.csv", "dynamic"),
                      ("_curve_noisy.csv", "noisy")]:
    path = prefix + suffix
    if not os.path.exists(path):
        continue
    _, rows = load(path)
    w = [val(r, "omega") for r in rows]
    if style == "analytic":
        plt.plot(w, [val(r, "i2_plus") for r in rows], "r-", label="plus branch")
        plt.plot(w, [val(r, "i2_minus") for r in rows], "r--", label="minus branch")
    elif style == "dynamic":
        plt.plot(w, [val(r, "i2") for r in rows], "b.--", label="time integration")
    else:
        plt.errorbar(w, [val(r, "mean_i2") for r in rows],
                     yerr=[val(r, "stderr_i2") for r in rows],
                     fmt="k.-", label="noisy ensemble")
if plt.gca().lines or plt.gca().containers:
    plt.xlabel("drive amplitude")
    plt.ylabel("|a2|^2")
    plt.legend()
    plt.savefig(prefix + "_curve.png", dpi=160)
    plt.close()

map_path = prefix + "_map2d.csv"
if os.path.exists(map_path):
    _, rows = load(map_path)
    xs = sorted({val(r, "omega") for r in rows})
    ys = sorted({val(r, "delta_omega1") for r in rows})
    grid = [[float("nan")] * len(xs) for _ in ys]
    for r in rows:
        grid[ys.index(val(r, "delta_omega1"))][xs.index(val(r, "omega"))] = val(r, "i2")
    plt.pcolormesh(xs, ys, grid, shading="nearest")
    plt.colorbar(label="|a2|^2")
    plt.xlabel("drive amplitude")
    plt.ylabel("delta_omega1")
    plt.savefig(prefix + "_map2d.png", dpi=160)
    plt.close()
print("plots written next to", prefix)
)";
    std::cerr << "wrote " << prefix << "_plot.py\n";
}

int cmd_thresholds(const CommonOpts& opts) {
    const RunConfig cfg = load_config_file(opts.config_path);
    const SystemParams& p = cfg.params;
    const double d2 = delta2_locked(p);

    std::ostringstream report;
    report << "omega_ex = " << format_num(omega_ex(p)) << "\n"
           << "omega_th = " << format_num(omega_th(p)) << "\n"
           << "class = " << to_string(excitation_class(p)) << "\n"
           << "jump = " << format_num(jump_magnitude(p)) << "\n"
           << "max_jump = " << format_num(max_jump(p)) << "\n"
           << "delta2 = " << format_num(d2) << "\n"
           << "delta_omega = " << format_num(d2 - p.delta_omega2) << "\n";
    std::cout << report.str();
    if (!opts.out_prefix.empty() || !cfg.output_prefix.empty())
        open_output(resolve_prefix(opts, cfg), "_thresholds.txt") << report.str();
    return kExitOk;
}

int cmd_curve(const CommonOpts& opts, bool analytic, bool dynamic, bool noisy,
              bool plot_script) {
    const RunConfig cfg = load_config_file(opts.config_path);
    if (!cfg.sweep) throw ConfigError(opts.config_path + ": [sweep] section required");
    const std::string prefix = resolve_prefix(opts, cfg);
    const SweepSpec spec = cfg.sweep_spec();
    spec.validate();

    int exit_code = kExitOk;
    if (analytic) {
        const AnalyticCurve curve =
            laser_curve_analytic(cfg.params, spec.omega_min, spec.omega_max, spec.steps);
        auto out = open_output(prefix, "_curve_analytic.csv");
        write_analytic_curve_csv(out, curve);
    }
    if (dynamic) {
        const DynamicCurve curve = laser_curve_dynamic(cfg.params, spec, exec_mode(opts));
        auto out = open_output(prefix, "_curve_dynamic.csv");
        write_dynamic_curve_csv(out, curve);
        if (curve.any_failed) exit_code = kExitNumerical;
    }
    if (noisy) {
        const auto grid = sweep_grid(cfg.params, spec.omega_min, spec.omega_max, spec.steps);
        const auto curve = ensemble_curve(cfg.params, grid, cfg.noise, exec_mode(opts));
        auto out = open_output(prefix, "_curve_noisy.csv");
        write_noisy_curve_csv(out, cfg.params, curve, cfg.noise.n_realizations);
        for (const auto& pt : curve)
            if (pt.n_realizations != cfg.noise.n_realizations) exit_code = kExitNumerical;
    }
    if (plot_script) emit_plot_script(prefix);
    return exit_code;
}

int cmd_map2d(const CommonOpts& opts, bool plot_script) {
    const RunConfig cfg = load_config_file(opts.config_path);
    if (!cfg.map) throw ConfigError(opts.config_path + ": [map] section required");
    const std::string prefix = resolve_prefix(opts, cfg);
    const Map2D map = map2d(cfg.params, cfg.map_spec(), exec_mode(opts));
    auto out = open_output(prefix, "_map2d.csv");
    write_map2d_csv(out, map);
    if (plot_script) emit_plot_script(prefix);
    return map.any_failed ? kExitNumerical : kExitOk;
}

int cmd_stability(const CommonOpts& opts, const std::string& branch_name,
                  std::optional<double> omega) {
    const RunConfig cfg = load_config_file(opts.config_path);
    SystemParams p = cfg.params;
    if (omega) p.omega_drive = *omega;

    std::optional<BranchPoint> branch;
    if (branch_name == "zero") branch = zero_branch(p);
    else if (branch_name == "plus") branch = nonzero_branch(p, Branch::Plus);
    else if (branch_name == "minus") branch = nonzero_branch(p, Branch::Minus);
    else throw ConfigError("unknown branch '" + branch_name + "'");

    std::cout << "branch = " << branch_name << "\n"
              << "omega = " << format_num(p.omega_drive) << "\n";
    if (!branch) {
        std::cout << "exists = 0\n";
        return kExitOk;
    }
    std::cout << "exists = 1\n"
              << "intensity_a2 = " << format_num(branch->intensity_a2) << "\n"
              << "delta_omega = " << format_num(branch->delta_omega) << "\n";

    const StabilityReport rep = assess(p, *branch);
    for (const auto& ev : rep.eigenvalues)
        std::cout << "eigenvalue = " << format_num(ev.real()) << " "
                  << (ev.imag() < 0 ? "- " : "+ ") << format_num(std::abs(ev.imag()))
                  << "i\n";
    std::cout << "goldstone_index = "
              << (rep.goldstone_index ? std::to_string(*rep.goldstone_index) : "none")
              << "\n"
              << "max_re_effective = " << format_num(rep.max_re_effective) << "\n"
              << "verdict = " << to_string(rep.verdict) << "\n";
    return kExitOk;
}

int cmd_oracle(const CommonOpts& opts, std::optional<double> omega, int starts,
               std::optional<std::uint64_t> seed) {
    const RunConfig cfg = load_config_file(opts.config_path);
    SystemParams p = cfg.params;
    if (omega) p.omega_drive = *omega;
    const std::uint64_t use_seed = seed.value_or(cfg.noise.base_seed);

    const auto roots = solve_stationary(p, starts, use_seed, exec_mode(opts));
    double max_dev = 0.0;
    int unmatched = 0;
    for (const auto& r : roots) {
        const auto match = match_root(p, r);
        std::cout << "root |a2|^2 = " << format_num(std::norm(r.a2))
                  << "  b = " << format_num(r.b_real)
                  << "  delta_omega = " << format_num(r.delta_omega)
                  << "  residual = " << format_num(r.residual_norm) << "  match = ";
        if (match) {
            std::cout << to_string(match->branch)
                      << "  deviation = " << format_num(match->deviation) << "\n";
            max_dev = std::max(max_dev, match->deviation);
        } else {
            std::cout << "none\n";
            ++unmatched;
        }
    }
    std::cout << "root_classes = " << roots.size() << "\n"
              << "unmatched = " << unmatched << "\n"
              << "max_deviation = " << format_num(max_dev) << "\n";
    return unmatched == 0 ? kExitOk : kExitNumerical;
}

int cmd_trajectory(const CommonOpts& opts, std::optional<double> omega, bool noisy,
                   std::uint64_t realization) {
    const RunConfig cfg = load_config_file(opts.config_path);
    SystemParams p = cfg.params;
    if (omega) p.omega_drive = *omega;
    const std::string prefix = resolve_prefix(opts, cfg);

    const ModeState init = seeded_zero_state(p, cfg.integrator.seed_amplitude);
    const Trajectory traj = noisy ? integrate_sde(p, init, cfg.noise, realization)
                                  : integrate(p, init, cfg.integrator);
    auto out = open_output(prefix, "_trajectory.csv");
    write_trajectory_csv(out, traj);
    return kExitOk;
}

const char kConfigHelp[] = R"(Config file (INI-style key = value; '#' comments; unknown keys rejected):
  [params]      delta_omega1*, delta_omega2*, omega_b*, gamma1*, gamma2*,
                gamma_b*, g* (all in units of the reference frequency),
                omega_drive (default 0)
  [integrator]  dt (0.01), t_end (2e4), seed_amplitude (1e-6),
                tail_fraction (0.25), stationarity_tol (1e-6), save_stride (auto)
  [noise]       n1, n2, nb (1e-3), dt (5e-3), t_end (1e4), realizations (16),
                base_seed (0), transient_fraction (0.5), save_stride (auto)
  [sweep]       omega_min*, omega_max*, steps*, mode (fresh |
                continue_forward | continue_backward)
  [map]         omega_min*, omega_max*, omega_steps*, delta_omega1_min*,
                delta_omega1_max*, delta_omega1_steps*, delta_omega2_offset (2e-3)
  [output]      prefix
(* = required within its section; sections other than [params] are optional)

Exit codes: 0 success, 2 configuration error, 3 partial numerical failure.
OMLASER_THREADS overrides the worker count.)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-mode optomechanical laser model: thresholds, laser curves,"
                 " stability and stochastic simulation"};
    app.footer(kConfigHelp);
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opts.config_path, "run configuration file")
            ->required();
        sub->add_option("-o,--out", opts.out_prefix, "output path prefix");
        sub->add_option("--threads", opts.threads, "worker count override");
        sub->add_flag("--serial", opts.serial, "force the serial reference path");
    };

    auto* thresholds = app.add_subcommand("thresholds", "closed-form threshold report");
    add_common(thresholds);

    auto* curve = app.add_subcommand("curve", "laser curve over the [sweep] drive grid");
    add_common(curve);
    bool analytic = false, dynamics_flag = false, noisy = false, plot = false;
    curve->add_flag("--analytic", analytic, "closed-form branches");
    curve->add_flag("--dynamic", dynamics_flag, "settled time integration");
    curve->add_flag("--noisy", noisy, "noisy ensemble");
    curve->add_flag("--emit-plot-script", plot, "write a plotting script");

    auto* map_cmd = app.add_subcommand("map2d", "drive x detuning intensity map");
    add_common(map_cmd);
    bool map_plot = false;
    map_cmd->add_flag("--emit-plot-script", map_plot, "write a plotting script");

    auto* stability = app.add_subcommand("stability", "branch stability report");
    add_common(stability);
    std::string branch_name = "zero";
    double stab_omega = -1.0;
    stability->add_option("--branch", branch_name, "zero | plus | minus");
    stability->add_option("--omega", stab_omega, "drive amplitude override");

    auto* oracle_cmd = app.add_subcommand("oracle", "multi-start stationary-root solve");
    add_common(oracle_cmd);
    double oracle_omega = -1.0;
    int starts = 200;
    std::int64_t oracle_seed = -1;
    oracle_cmd->add_option("--omega", oracle_omega, "drive amplitude override");
    oracle_cmd->add_option("--starts", starts, "number of Newton starts");
    oracle_cmd->add_option("--seed", oracle_seed, "start-sampling seed");

    auto* traj_cmd = app.add_subcommand("trajectory", "export one sampled trajectory");
    add_common(traj_cmd);
    double traj_omega = -1.0;
    bool traj_noisy = false;
    std::uint64_t realization = 0;
    traj_cmd->add_option("--omega", traj_omega, "drive amplitude override");
    traj_cmd->add_flag("--noisy", traj_noisy, "integrate with noise");
    traj_cmd->add_option("--realization", realization, "noise stream index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        apply_thread_options(opts);
        if (*thresholds) return cmd_thresholds(opts);
        if (*curve) {
            if (!analytic && !dynamics_flag && !noisy)
                throw ConfigError("curve: pick at least one of --analytic, --dynamic, --noisy");
            return cmd_curve(opts, analytic, dynamics_flag, noisy, plot);
        }
        if (*map_cmd) return cmd_map2d(opts, map_plot);
        if (*stability)
            return cmd_stability(opts, branch_name,
                                 stab_omega >= 0.0 ? std::optional(stab_omega) : std::nullopt);
        if (*oracle_cmd)
            return cmd_oracle(opts,
                              oracle_omega >= 0.0 ? std::optional(oracle_omega) : std::nullopt,
                              starts,
                              oracle_seed >= 0
                                  ? std::optional(static_cast<std::uint64_t>(oracle_seed))
                                  : std::nullopt);
        if (*traj_cmd)
            return cmd_trajectory(opts,
                                  traj_omega >= 0.0 ? std::optional(traj_omega) : std::nullopt,
                                  traj_noisy, realization);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
