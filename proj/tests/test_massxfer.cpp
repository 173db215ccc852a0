#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ifslab/massxfer.hpp"

using namespace ifslab;

namespace {
const double kDim = std::log(2.0) / std::log(3.0);
}

TEST_CASE("scale_ball: exponent arithmetic") {
    // s = dim_h leaves the radius alone
    ScaledBall same = scale_ball(rat(1, 2), 0.125, kDim, kDim);
    CHECK(same.scaled_radius == doctest::Approx(0.125).epsilon(1e-14));

    // r = 1/4, s = dim/2: radius^{1/2} = 1/2
    ScaledBall half = scale_ball(Rat(0), 0.25, kDim / 2, kDim);
    CHECK(half.scaled_radius == doctest::Approx(0.5).epsilon(1e-13));

    // t-powered radii are undone by s = dim/t
    double t = 3.0;
    double r = 1.0 / 9;
    ScaledBall undo = scale_ball(Rat(0), std::pow(r, t), kDim / t, kDim);
    CHECK(undo.scaled_radius == doctest::Approx(r).epsilon(1e-12));

    // scaling twice composes exponents multiplicatively
    ScaledBall once = scale_ball(Rat(0), 0.3, 0.4, kDim);
    ScaledBall twice = scale_ball(Rat(0), once.scaled_radius, 0.9, kDim);
    CHECK(twice.scaled_radius ==
          doctest::Approx(std::pow(0.3, 0.4 * 0.9 / (kDim * kDim))).epsilon(1e-12));

    CHECK_THROWS_AS(scale_ball(Rat(0), 0.0, 1.0, kDim), ValidationError);
}

TEST_CASE("critical exponent scan: cantor3 at t = 1 and t = 2") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    std::vector<double> grid = default_scan_grid(kDim);
    CHECK(grid.size() == 64);

    CriticalScan t1 = critical_exponent_scan(cantor, 1.0, 6, grid);
    REQUIRE(t1.bracket.has_value());
    CHECK(t1.bracket->first <= kDim);
    CHECK(t1.bracket->second >= kDim);
    CHECK(t1.bracket->second - t1.bracket->first <= t1.grid_step * (1 + 1e-12));

    CriticalScan t2 = critical_exponent_scan(cantor, 2.0, 6, grid);
    REQUIRE(t2.bracket.has_value());
    CHECK(t2.bracket->first <= kDim / 2);
    CHECK(t2.bracket->second >= kDim / 2);
}

TEST_CASE("critical exponent scan: ex21 at t = 2 brackets 1/2") {
    Ifs1D ex21 = Ifs1D::preset("ex21");
    std::vector<double> grid = default_scan_grid(1.0);
    CriticalScan scan = critical_exponent_scan(ex21, 2.0, 6, grid);
    REQUIRE(scan.bracket.has_value());
    // (3/4)^{2s} + (1/4)^{2s} = 1 at s = 1/2
    CHECK(scan.bracket->first <= 0.5);
    CHECK(scan.bracket->second >= 0.5);
}

TEST_CASE("critical exponent scan: homogeneity in t") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    std::vector<double> grid = default_scan_grid(kDim, 256);
    double step = grid[1] - grid[0];
    CriticalScan t4 = critical_exponent_scan(cantor, 4.0, 4, grid);
    REQUIRE(t4.bracket.has_value());
    CHECK(std::abs(0.5 * (t4.bracket->first + t4.bracket->second) - kDim / 4) <= step);
}

TEST_CASE("critical exponent scan: agreement with the dimension solve at t = 1") {
    for (const char* name : {"cantor3", "ex21", "overlap_demo"}) {
        Ifs1D ifs = Ifs1D::preset(name);
        std::vector<Rat> ratios;
        for (const auto& m : ifs.sim) ratios.push_back(m.ratio);
        double dim_s = similarity_dimension(ratios, 1e-12).midpoint();
        CriticalScan scan =
            critical_exponent_scan(ifs, 1.0, 4, default_scan_grid(dim_s));
        REQUIRE(scan.bracket.has_value());
        CHECK(scan.bracket->first - scan.grid_step <= dim_s);
        CHECK(scan.bracket->second + scan.grid_step >= dim_s);
    }
}

TEST_CASE("critical exponent scan: moebius rate estimation") {
    Ifs1D cf = Ifs1D::preset("cf12");
    // dim_H of the {1,2} continued-fraction set is near 0.5313
    std::vector<double> grid = default_scan_grid(0.55);
    CriticalScan scan = critical_exponent_scan(cf, 1.0, 8, grid);
    REQUIRE(scan.bracket.has_value());
    CHECK(scan.bracket->first < 0.5313);
    CHECK(scan.bracket->second > 0.52);

    // rates decrease in s
    for (std::size_t i = 1; i < scan.rate.size(); ++i) CHECK(scan.rate[i] < scan.rate[i - 1]);
}

TEST_CASE("scan rejects grids that miss the transition") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    std::vector<double> high{1.0, 1.1, 1.2};  // rate < 1 everywhere
    CHECK_THROWS_AS(critical_exponent_scan(cantor, 1.0, 4, high), ValidationError);
    CHECK_THROWS_AS(critical_exponent_scan(cantor, 0.5, 4, default_scan_grid(kDim)),
                    ValidationError);
}
