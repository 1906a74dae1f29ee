#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnlif/csv_output.hpp"
#include "nnlif/errors.hpp"
#include "nnlif/harness.hpp"
#include "nnlif/stationary.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace nnlif;

namespace {

ScenarioConfig order_base() {
    ScenarioConfig cfg;
    cfg.params = ModelParams{1.0, 0.0, 0.5, 0.0};
    cfg.ic = GaussianIc{0.0, 0.5};
    cfg.t_end = 0.5;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("gaussian initial condition") {
    const Grid g(-4.0, 1.0, 2.0, 300);
    const auto p = gaussian_ic(0.0, 0.5, g);
    REQUIRE(p.size() == 301);
    CHECK(p.front() == 0.0);
    CHECK(p.back() == 0.0);
    CHECK(h_sum(p, g) == doctest::Approx(1.0).epsilon(1e-14));

    double raw = 0.0;
    for (int i = 1; i < 300; ++i) raw += std::exp(-g.node(i) * g.node(i) / 0.5);
    const double scale = 1.0 / (g.spacing() * raw);
    for (int i = 1; i < 300; i += 11) {
        CHECK(p[i] == doctest::Approx(scale * std::exp(-g.node(i) * g.node(i) / 0.5)).epsilon(1e-14));
    }
    // v = 0 is node 200; the profile is symmetric about it
    for (int k = 1; k < 100; ++k) CHECK(p[200 - k] == doctest::Approx(p[200 + k]).epsilon(1e-14));

    // normalization agrees with the truncated continuous one up to the
    // missing half weight at v = 2, where the profile is still e^-8
    const double inside =
        1.0 - 0.5 * std::erfc(2.0 / (0.5 * std::sqrt(2.0))) - 0.5 * std::erfc(4.0 / (0.5 * std::sqrt(2.0)));
    const double peak = 1.0 / (0.5 * std::sqrt(2.0 * std::numbers::pi) * inside);
    CHECK(p[200] == doctest::Approx(peak).epsilon(1e-5));

    CHECK(h_sum(gaussian_ic(0.0, 0.5, g, 0.8), g) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_ic(0.0, 0.0, g), InvalidArgument);
}

TEST_CASE("stationary initial condition") {
    const Grid g(-4.0, 1.0, 2.0, 300);
    const ModelParams params{1.0, 0.0, 1.5, 0.0};
    const auto roots = find_stationary_rates(params, g);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(0.1924).epsilon(2e-2 / 0.1924));
    const auto p = stationary_ic(roots[0], g, params);
    CHECK(h_sum(p, g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.back() == 0.0);
    for (int i = 1; i < 300; ++i) CHECK(p[i] > 0.0);
}

TEST_CASE("runs are deterministic") {
    ScenarioConfig cfg = order_base();
    cfg.n = 60;
    cfg.params.b = 1.5;
    cfg.outputs.snapshot_times = {0.0, 0.25, 0.5};
    cfg.outputs.entropy = true;
    const auto dir = std::filesystem::temp_directory_path() / "nnlif_det";
    std::filesystem::remove_all(dir);
    write_run_outputs(run_scenario(cfg), dir / "a");
    write_run_outputs(run_scenario(cfg), dir / "b");
    for (const char* f : {"rate.csv", "snapshots.csv", "mass.csv", "entropy.csv"}) {
        const auto a = slurp(dir / "a" / f);
        CHECK(!a.empty());
        CHECK(a == slurp(dir / "b" / f));
    }
    CHECK_FALSE(std::filesystem::exists(dir / "a" / "energy.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("run bookkeeping") {
    ScenarioConfig cfg = order_base();
    cfg.n = 60;
    cfg.tau = 1e-3;
    cfg.outputs.rate_every = 10;
    cfg.outputs.snapshot_times = {0.0, 0.1234, 0.5};
    const auto r = run_scenario(cfg);
    CHECK(r.stop_reason == StopReason::completed);
    CHECK(r.steps == 500);
    CHECK(r.v.size() == 61);
    CHECK(r.rate.size() == 51);
    CHECK(r.rate.front().t == 0.0);
    CHECK(r.rate.back().t == doctest::Approx(0.5));
    REQUIRE(r.snapshots.size() == 3);
    CHECK(r.snapshots[1].t == doctest::Approx(0.123));
    CHECK(r.snapshots[2].p == r.final_p);
    CHECK(r.final_mass == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& m : r.mass) CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("blow-up threshold stops the run") {
    ScenarioConfig cfg;
    cfg.params = ModelParams{1.0, 0.0, 3.0, 0.0};
    cfg.ic = GaussianIc{-1.0, std::sqrt(0.5)};
    cfg.t_end = 5.0;
    cfg.blowup_threshold = 5.0;
    cfg.negative_density = NegativeDensityPolicy::warn;
    const auto r = run_scenario(cfg);
    CHECK(r.stop_reason == StopReason::blowup);
    CHECK(r.stop_time < 5.0);
    CHECK(r.final_rate > 5.0);
}

TEST_CASE("explicit instability is reported") {
    ScenarioConfig cfg = order_base();
    cfg.n = 384;
    cfg.tau = 0.5 / 1000;
    cfg.scheme = Scheme::explicit_euler;
    const auto r = run_scenario(cfg);
    CHECK(r.stop_reason == StopReason::instability);
    CHECK(r.stop_time < 0.5);
    cfg.scheme = Scheme::semi_implicit;
    CHECK(run_scenario(cfg).stop_reason == StopReason::completed);
}

TEST_CASE("temporal convergence row") {
    ScenarioConfig cfg = order_base();
    cfg.n = 384;
    cfg.tau = 0.5 / 1000;
    const auto rows = convergence_order(cfg, RefinementAxis::time, 3, false);
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[0].err_linf.has_value());
    CHECK(rows[0].step == 0.5 / 1000);
    CHECK(rows[2].last);
    CHECK_FALSE(rows[2].order_l1.has_value());
    for (int k = 0; k < 2; ++k) CHECK(*rows[k].order_linf == doctest::Approx(1.0).epsilon(0.01));
    // reference values: Linf 3.6582e-05, mean absolute difference 1.0884e-05
    CHECK(*rows[0].err_linf == doctest::Approx(3.6582e-5).epsilon(1e-3));
    CHECK(*rows[0].err_l1 / 6.0 == doctest::Approx(1.0884e-5).epsilon(1e-3));
}

TEST_CASE("spatial convergence rows") {
    ScenarioConfig cfg = order_base();
    cfg.n = 48;
    cfg.tau = 0.5 / 10000;
    const auto rows = convergence_order(cfg, RefinementAxis::space, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].step == doctest::Approx(6.0 / 48));
    CHECK(rows[1].step == doctest::Approx(6.0 / 96));
    REQUIRE(rows[0].order_l1.has_value());
    CHECK(*rows[0].order_l1 == doctest::Approx(1.830).epsilon(0.15 / 1.830));
    CHECK(*rows[0].order_l1 == doctest::Approx(std::log2(*rows[0].err_l1 / *rows[1].err_l1)));
    CHECK(*rows[0].err_linf >= *rows[0].err_l1 / 6.0);
}

TEST_CASE("unstable rows have no error") {
    ScenarioConfig cfg = order_base();
    cfg.n = 384;
    cfg.tau = 0.5 / 500;
    cfg.scheme = Scheme::explicit_euler;
    const auto rows = convergence_order(cfg, RefinementAxis::time, 3, false);
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].err_l1.has_value());
    std::ostringstream out;
    write_orders_csv(out, rows);
    CHECK(out.str().find("unstable") != std::string::npos);
}

TEST_CASE("oscillation report") {
    std::vector<RatePoint> flat;
    for (int k = 0; k < 500; ++k) flat.push_back({k * 0.01, 0.3});
    const auto none = oscillation_report(flat);
    CHECK_FALSE(none.sustained);
    CHECK(none.peak_times.empty());

    std::vector<RatePoint> sine;
    const double period = 0.27;
    for (int k = 0; k < 1000; ++k) {
        const double t = k * 0.01;
        sine.push_back({t, 2.0 + std::sin(2.0 * std::numbers::pi * t / period)});
    }
    const auto rep = oscillation_report(sine);
    CHECK(rep.sustained);
    CHECK(rep.peak_times.size() >= 3);
    CHECK(rep.period == doctest::Approx(period).epsilon(0.02));
    CHECK(rep.spacing_spread < 0.1);
    CHECK(std::abs(rep.amplitude_slope) < 1e-2);

    // a decaying ripple whose peaks fall below the 1% prominence does not count
    std::vector<RatePoint> damped;
    for (int k = 0; k < 1000; ++k) {
        const double t = k * 0.01;
        damped.push_back({t, 1.0 + std::exp(-3.0 * t) + 1e-9 * std::sin(40.0 * t)});
    }
    CHECK_FALSE(oscillation_report(damped).sustained);

    CHECK_THROWS_AS(oscillation_report(std::vector<RatePoint>(99)), InvalidArgument);
}

TEST_CASE("csv formats") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);

    std::ostringstream rate;
    write_rate_csv(rate, std::vector<RatePoint>{{0.0, 1.5}});
    CHECK(rate.str().rfind("t,N\r\n", 0) == 0);

    std::ostringstream mass;
    write_mass_csv(mass, std::vector<MassPoint>{{0.0, 0.8, 0.2}});
    CHECK(mass.str().rfind("t,mass,R\r\n", 0) == 0);

    std::ostringstream ent;
    write_entropy_csv(ent, std::vector<EntropyReport>{});
    CHECK(ent.str() == "t,S,bulk,boundary\r\n");

    std::ostringstream snap;
    const std::vector<double> v{0.0, 1.0};
    write_snapshots_csv(snap, std::vector<Snapshot>{{0.5, {0.0, 2.0}}}, v);
    CHECK(snap.str() == "t,v,p\r\n" + format_real(0.5) + ",0," + "0\r\n" + format_real(0.5) + ",1,2\r\n");
}
