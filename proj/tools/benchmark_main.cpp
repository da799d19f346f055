// Times the serial reference path against the OpenMP path for the three
// data-parallel kernels (fresh sweep points, noisy realizations, Newton
// starts) and checks that both produce identical numbers.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "omlaser/oracle.hpp"
#include "omlaser/stochastic.hpp"
#include "omlaser/sweep.hpp"

using namespace omlaser;

namespace {

SystemParams bench_params() {
    SystemParams p;
    p.delta_omega1 = 4e-3;
    p.delta_omega2 = 5e-3;
    p.omega_b = 5e-3;
    p.gamma1 = 1e-2;
    p.gamma2 = 1e-3;
    p.gamma_b = 1e-3;
    p.g = 1e-2;
    p.omega_drive = 6e-3;
    return p;
}

template <typename F>
double seconds(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-18s serial %7.3f s   openmp %7.3f s   speedup %4.2fx   %s\n", name,
                serial, parallel, serial / parallel,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    const SystemParams p = bench_params();
    std::printf("workers: %d\n", worker_count());

    {
        SweepSpec spec;
        spec.omega_min = 4.5e-3;
        spec.omega_max = 7.5e-3;
        spec.steps = 16;
        spec.integrator.t_end = 6e3;
        DynamicCurve a, b;
        const double ts = seconds([&] { a = laser_curve_dynamic(p, spec, ExecMode::Serial); });
        const double tp = seconds([&] { b = laser_curve_dynamic(p, spec, ExecMode::OpenMP); });
        bool same = a.points.size() == b.points.size();
        for (std::size_t k = 0; same && k < a.points.size(); ++k)
            same = a.points[k].obs.i2 == b.points[k].obs.i2 &&
                   a.points[k].obs.i1 == b.points[k].obs.i1;
        report("dynamic sweep", ts, tp, same);
    }

    {
        NoiseConfig cfg;
        cfg.dt = 0.01;
        cfg.t_end = 4e3;
        cfg.n_realizations = 8;
        cfg.base_seed = 11;
        std::vector<double> grid(12);
        for (std::size_t k = 0; k < grid.size(); ++k)
            grid[k] = 4.5e-3 + 3e-3 * static_cast<double>(k) / 11.0;
        std::vector<EnsemblePoint> a, b;
        const double ts = seconds([&] { a = ensemble_curve(p, grid, cfg, ExecMode::Serial); });
        const double tp = seconds([&] { b = ensemble_curve(p, grid, cfg, ExecMode::OpenMP); });
        bool same = a.size() == b.size();
        for (std::size_t k = 0; same && k < a.size(); ++k)
            same = a[k].mean_i2 == b[k].mean_i2 && a[k].stderr_i2 == b[k].stderr_i2;
        report("noisy ensemble", ts, tp, same);
    }

    {
        std::vector<OracleSolution> a, b;
        const double ts = seconds([&] { a = solve_stationary(p, 20000, 5, ExecMode::Serial); });
        const double tp = seconds([&] { b = solve_stationary(p, 20000, 5, ExecMode::OpenMP); });
        bool same = a.size() == b.size();
        for (std::size_t k = 0; same && k < a.size(); ++k)
            same = a[k].a2 == b[k].a2 && a[k].delta_omega == b[k].delta_omega;
        report("newton starts", ts, tp, same);
    }
    return 0;
}
