#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnlif/errors.hpp"
#include "nnlif/grid_model.hpp"

#include <cmath>
#include <random>

using namespace nnlif;

TEST_CASE("grid geometry") {
    Grid g(-4.0, 1.0, 2.0, 300);
    CHECK(g.spacing() == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(g.reset_index() == 250);
    CHECK(g.node(0) == -4.0);
    CHECK(g.node(300) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.node(250) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.half_node(0) == doctest::Approx(-3.99));
    CHECK_FALSE(g.right_of_reset(249));
    CHECK(g.right_of_reset(250));

    const auto nodes = g.nodes();
    REQUIRE(nodes.size() == 301);
    CHECK(nodes.front() == -4.0);

    const Grid f = g.refined();
    CHECK(f.cells() == 600);
    CHECK(f.reset_index() == 500);
}

TEST_CASE("grid rejects bad input") {
    CHECK_THROWS_AS(Grid(1.0, 0.0, 2.0, 10), InvalidArgument);
    CHECK_THROWS_AS(Grid(0.0, 2.0, 2.0, 10), InvalidArgument);
    CHECK_THROWS_AS(Grid(0.0, 1.0, 2.0, 1), InvalidArgument);
    // reset not on a node: h = 6/7
    CHECK_THROWS_AS(Grid(-4.0, 1.0, 2.0, 7), InvalidArgument);
    CHECK_NOTHROW(Grid(0.0, 1.0, 2.0, 60));
}

TEST_CASE("model parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.a0 = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.a0 = 1.0;
    p.b = std::nan("");
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("drift") {
    CHECK(drift(0.0, 0.0, ModelParams{1, 0, 2.5, 0}) == 0.0);
    CHECK(drift(1.0, 2.0, ModelParams{1, 0, 1.5, 0}) == doctest::Approx(2.0));
    CHECK(drift(1.0, 0.0, ModelParams{1, 0, -4, 10}) == doctest::Approx(9.0));
}

TEST_CASE("diffusion") {
    CHECK(diffusion(0.0, ModelParams{1, 0, 0, 0}) == 1.0);
    CHECK(diffusion(0.1420, ModelParams{1, 0.1, 0, 0}) == doctest::Approx(1.01420));
    try {
        diffusion(20.0, ModelParams{1, -0.1, 0, 0});
        FAIL("expected a failure");
    } catch (const NumericalFailure& e) {
        CHECK(e.kind() == NumericalFailure::Kind::nonpositive_diffusion);
    }
}

TEST_CASE("maxwellian") {
    const ModelParams p{1.0, 0.2, 1.5, 0.7};
    const double n = 0.8;
    CHECK(maxwellian(p.b * n + p.v_ext, n, p) == doctest::Approx(1.0));
    CHECK(maxwellian(1.0, 0.0, ModelParams{}) == doctest::Approx(0.6065306597126334));

    const double c = p.b * n + p.v_ext;
    for (double v : {-3.0, -0.5, 0.1, 2.0}) {
        CHECK(maxwellian(v, n, p) == doctest::Approx(maxwellian(2.0 * c - v, n, p)));
        CHECK(maxwellian(v, n, p) > 0.0);
        CHECK(maxwellian(v, n, p) <= 1.0);
    }
}

TEST_CASE("harmonic mean") {
    CHECK(harmonic_mean(0.37, 0.37) == doctest::Approx(0.37));
    CHECK(harmonic_mean(1.0, 1.0 / 3.0) == doctest::Approx(0.5));
    CHECK(harmonic_mean(0.2, 0.9) == harmonic_mean(0.9, 0.2));
    CHECK_THROWS_AS(harmonic_mean(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(harmonic_mean(1.0, -1.0), InvalidArgument);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(1e-6, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(rng), b = u(rng);
        const double hm = harmonic_mean(a, b);
        CHECK(hm >= std::min(a, b) * (1 - 1e-15));
        CHECK(hm <= std::max(a, b) * (1 + 1e-15));
        CHECK(hm <= std::sqrt(a * b) * (1 + 1e-15));
    }
}

TEST_CASE("sg weights agree with direct Maxwellian ratios") {
    const Grid g(-4.0, 1.0, 2.0, 60);
    const ModelParams p{1.0, 0.1, 1.5, 0.3};
    const double n = 0.9;
    const auto c = sg_coefficients(g, n, p);
    CHECK(c.diffusion == doctest::Approx(1.09));
    for (int i = 0; i < g.cells(); ++i) {
        const double mi = maxwellian(g.node(i), n, p);
        const double mj = maxwellian(g.node(i + 1), n, p);
        const double mh = 2.0 / (1.0 / mi + 1.0 / mj);
        CHECK(c.toward_self[i] == doctest::Approx(mh / mi).epsilon(1e-12));
        CHECK(c.toward_next[i] == doctest::Approx(mh / mj).epsilon(1e-12));
    }
}

TEST_CASE("sg weights stay finite for far-away Maxwellian centers") {
    const Grid g(-4.0, 1.0, 2.0, 300);
    const auto c = sg_coefficients(g, 80.0, ModelParams{1.0, 0.0, 3.0, 0.0});
    for (std::size_t i = 0; i < c.toward_next.size(); ++i) {
        CHECK(std::isfinite(c.toward_next[i]));
        CHECK(std::isfinite(c.toward_self[i]));
        CHECK(c.toward_next[i] + c.toward_self[i] == doctest::Approx(2.0));
    }
}

TEST_CASE("g_half") {
    // symmetric nodes about the peak give zero
    const Grid sym(-1.0, 0.0, 1.0, 20);
    CHECK(g_half(10, 0.0, Grid(-1.05, 0.95, 1.05, 21), ModelParams{}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(g_half(0, 0.0, sym, ModelParams{}), InvalidArgument);
    CHECK_THROWS_AS(g_half(19, 0.0, sym, ModelParams{}), InvalidArgument);

    // v_i = 0, h = 0.1: node 10 of [-1, 1] with 20 cells
    const double oracle = (2.0 / 0.1) * (1.0 - std::exp(-0.005)) / (1.0 + std::exp(-0.005));
    const Grid g(-1.0, 0.5, 1.0, 20);
    CHECK(g_half(10, 0.0, g, ModelParams{}) == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(std::abs(oracle - 0.05) < 1e-6);
}

TEST_CASE("g_half approaches the half node at second order") {
    // Grids shifted so that interface 1/h sits at v = 0.55, h = 0.1, 0.05, 0.025.
    double err[3];
    for (int k = 0; k < 3; ++k) {
        const int n = 20 << k;
        const double h = 0.1 / (1 << k);
        const double v_min = -0.45 - 0.5 * h;
        const Grid g(v_min, v_min + (n / 2) * h, v_min + n * h, n);
        const int i = 10 << k;
        REQUIRE(g.half_node(i) == doctest::Approx(0.55).epsilon(1e-12));
        err[k] = std::abs(g_half(i, 0.0, g, ModelParams{}) - 0.55);
    }
    const double order1 = std::log2(err[0] / err[1]);
    const double order2 = std::log2(err[1] / err[2]);
    CHECK(order1 == doctest::Approx(2.0).epsilon(0.02));
    CHECK(order2 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("g_half is rate independent in the linear model") {
    const Grid g(-4.0, 1.0, 2.0, 300);
    for (int i : {1, 100, 250, 298}) {
        CHECK(g_half(i, 0.0, g, ModelParams{}) == g_half(i, 0.73, g, ModelParams{}));
    }
}

TEST_CASE("technical assumption") {
    const Grid g(-4.0, 1.0, 2.0, 300);
    CHECK(technical_assumption_holds(g, 0.12, ModelParams{}));
    CHECK(technical_assumption_holds(g, 50.0, ModelParams{1.0, 0.0, 3.0, 0.0}));
    const double h = g.spacing();
    for (int i = 1; i <= g.cells() - 2; ++i) {
        CHECK(std::abs(g_half(i, 50.0, g, ModelParams{1.0, 0.0, 3.0, 0.0})) <= 2.0 / h);
    }
}
