#include <doctest.h>

#include <sstream>

#include "omlaser/config.hpp"
#include "omlaser/csv.hpp"
#include "support/common.hpp"

using namespace omlaser;

namespace {

const char kGoodConfig[] = R"(# minimal valid run
[params]
delta_omega1 = 4.0e-3
delta_omega2 = 5.0e-3
omega_b      = 5.0e-3
gamma1       = 1.0e-2
gamma2       = 1.0e-3   ; trailing comment
gamma_b      = 1.0e-3
g            = 1.0e-2
omega_drive  = 6.0e-3

[sweep]
omega_min = 4.0e-3
omega_max = 8.0e-3
steps = 60

[output]
prefix = out/run
)";

}  // namespace

TEST_CASE("config round trip of a valid file") {
    const RunConfig cfg = parse_config_text(kGoodConfig, "good.cfg");
    CHECK(cfg.params.delta_omega1 == 4e-3);
    CHECK(cfg.params.gamma2 == 1e-3);
    CHECK(cfg.params.omega_drive == 6e-3);
    CHECK(cfg.integrator.dt == 0.01);  // defaults untouched
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->steps == 60);
    CHECK(cfg.sweep->mode == SweepMode::Fresh);
    CHECK(cfg.output_prefix == "out/run");
    CHECK_FALSE(cfg.map.has_value());
    CHECK_NOTHROW(cfg.sweep_spec().validate());
}

TEST_CASE("config rejections carry the offending location") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text, "t.cfg");
            FAIL_CHECK("expected ConfigError for: " << needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    std::string missing = kGoodConfig;
    const std::string gamma2_line = "gamma2       = 1.0e-3   ; trailing comment\n";
    missing.erase(missing.find(gamma2_line), gamma2_line.size());
    expect_error(missing, "gamma2");

    expect_error(std::string(kGoodConfig) + "\n[params]\ng = 2e-2\n", "duplicate");
    expect_error(std::string(kGoodConfig) + "\n[typo_section]\nx = 1\n", "typo_section");
    expect_error(std::string(kGoodConfig) + "\nstray = 1\n", "stray");
    expect_error("[params]\ndelta_omega1 == 3\n", "delta_omega1");
    expect_error("key_outside = 1\n", "outside");
    expect_error("[params\n", "unterminated");

    std::string bad_value = kGoodConfig;
    bad_value.replace(bad_value.find("4.0e-3"), 6, "4.0f-3");
    expect_error(bad_value, ":3:");  // line number of the bad value

    std::string negative = kGoodConfig;
    negative.replace(negative.find("1.0e-2\ngamma2"), 6, "-1e-2 ");
    expect_error(negative, "gamma1");
}

TEST_CASE("duplicate keys are rejected with their line") {
    const char text[] = "[params]\ng = 1e-2\ng = 2e-2\n";
    try {
        parse_config_text(text, "dup.cfg");
        FAIL_CHECK("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("dup.cfg:3") != std::string::npos);
    }
}

TEST_CASE("csv writers emit the schema line and re-parse") {
    const SystemParams p = testutil::hard_params(6e-3);
    const AnalyticCurve curve = laser_curve_analytic(p, 4e-3, 8e-3, 10);

    std::ostringstream out;
    write_analytic_curve_csv(out, curve);
    std::istringstream in(out.str());
    const CsvTable table = read_csv(in);
    CHECK(table.schema == "curve_analytic");
    CHECK(table.version == kArtifactVersion);
    REQUIRE(table.header.size() == 5);
    CHECK(table.header[0] == "omega");
    REQUIRE(table.rows.size() == 10);
    // Every cell in the numeric columns parses as a double (nan allowed).
    for (const auto& row : table.rows)
        for (const auto& cell : {row[0], row[3], row[4]}) {
            std::size_t pos = 0;
            (void)std::stod(cell, &pos);
            CHECK(pos == cell.size());
        }
}

TEST_CASE("csv bodies are byte-identical across writes") {
    const SystemParams p = testutil::hard_params(6e-3);
    NoiseConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1e3;
    cfg.n_realizations = 3;
    cfg.base_seed = 21;
    const auto curve = ensemble_curve(p, {5e-3, 6e-3, 7e-3}, cfg);

    std::ostringstream first, second;
    write_noisy_curve_csv(first, p, curve, cfg.n_realizations);
    write_noisy_curve_csv(second, p, ensemble_curve(p, {5e-3, 6e-3, 7e-3}, cfg),
                          cfg.n_realizations);
    CHECK(first.str() == second.str());
    CHECK(first.str().rfind("# schema=curve_noisy", 0) == 0);
}

TEST_CASE("csv reader flags malformed input") {
    std::istringstream no_schema("omega,i2\n1,2\n");
    CHECK_THROWS_AS(read_csv(no_schema), std::runtime_error);

    std::istringstream ragged("# schema=curve_dynamic version=1\na,b\n1,2,3\n");
    CHECK_THROWS_AS(read_csv(ragged), std::runtime_error);
}

TEST_CASE("map and trajectory schemas") {
    const SystemParams p = testutil::hard_params(6e-3);
    IntegratorConfig icfg;
    icfg.t_end = 50.0;
    const Trajectory traj = integrate(p, seeded_zero_state(p, 1e-6), icfg);
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    std::istringstream in(out.str());
    const CsvTable table = read_csv(in);
    CHECK(table.schema == "trajectory");
    CHECK(table.header.size() == 10);
    CHECK(table.rows.size() == traj.states.size());
}
