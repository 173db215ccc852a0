#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ifslab/dimension.hpp"

using namespace ifslab;

namespace {
const double kLog2Log3 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("similarity dimension: closed forms") {
    DimensionResult r = similarity_dimension({rat(1, 3), rat(1, 3)}, 1e-12);
    CHECK(r.midpoint() == doctest::Approx(kLog2Log3).epsilon(1e-10));
    CHECK(r.width() <= 1e-12);
    CHECK(r.method == DimensionResult::Method::exact_similarity);

    CHECK(similarity_dimension({rat(3, 4), rat(1, 4)}, 1e-12).midpoint() ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(similarity_dimension({rat(1, 2), rat(1, 2)}, 1e-12).midpoint() ==
          doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(similarity_dimension({}, 1e-10), ValidationError);
    CHECK_THROWS_AS(similarity_dimension({rat(1, 3)}, -1.0), ValidationError);
    CHECK_THROWS_AS(similarity_dimension({Rat(2)}, 1e-10), ValidationError);
}

TEST_CASE("similarity dimension: permutation invariance") {
    std::vector<Rat> ratios{rat(1, 5), rat(2, 7), rat(1, 3), rat(1, 11)};
    double base = similarity_dimension(ratios, 1e-11).midpoint();
    std::mt19937 rng(1);
    for (int trial = 0; trial < 8; ++trial) {
        std::shuffle(ratios.begin(), ratios.end(), rng);
        CHECK(similarity_dimension(ratios, 1e-11).midpoint() ==
              doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("pressure: similarity systems collapse to log sum r^s") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    for (int n : {1, 3, 6}) {
        PressureBounds p = pressure_bounds(cantor, kLog2Log3, n, ExecMode::serial);
        CHECK(p.lower == p.upper);
        CHECK(p.lower == doctest::Approx(0.0).epsilon(1e-12));
        PressureBounds q = pressure_bounds(cantor, 0.4, n, ExecMode::serial);
        CHECK(q.upper ==
              doctest::Approx(std::log(2.0 * std::pow(1.0 / 3.0, 0.4))).epsilon(1e-12));
    }
}

TEST_CASE("pressure: cf12 values") {
    Ifs1D cf = Ifs1D::preset("cf12");
    PressureBounds p0 = pressure_bounds(cf, 0.0, 1);
    CHECK(p0.lower == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(p0.upper == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // the dimension of this set is well below 1
    PressureBounds p1 = pressure_bounds(cf, 1.0, 8);
    CHECK(p1.upper < 0.0);

    CHECK_THROWS_AS(pressure_bounds(cf, -1.0, 4), ValidationError);
    CHECK_THROWS_AS(pressure_bounds(cf, 0.5, 0), ValidationError);
}

TEST_CASE("pressure: strictly decreasing in s on a grid") {
    for (const char* name : {"cantor3", "cf12"}) {
        Ifs1D ifs = Ifs1D::preset(name);
        double prev_lo = 1e300, prev_hi = 1e300;
        for (double s = 0.0; s <= 1.2; s += 0.1) {
            PressureBounds p = pressure_bounds(ifs, s, 6);
            CHECK(p.lower < prev_lo);
            CHECK(p.upper < prev_hi);
            CHECK(p.lower <= p.upper);
            prev_lo = p.lower;
            prev_hi = p.upper;
        }
    }
}

TEST_CASE("bowen bracket: similarity collapse and cf12 stability") {
    DimensionResult cantor = bowen_bracket(Ifs1D::preset("cantor3"), 8, 1e-10);
    CHECK(cantor.lower <= kLog2Log3);
    CHECK(cantor.upper >= kLog2Log3);
    CHECK(cantor.width() <= 1e-9);

    DimensionResult ex21 = bowen_bracket(Ifs1D::preset("ex21"), 6, 1e-10);
    CHECK(ex21.lower <= 1.0);
    CHECK(ex21.upper >= 1.0);

    Ifs1D cf = Ifs1D::preset("cf12");
    DimensionResult b8 = bowen_bracket(cf, 8, 1e-10);
    DimensionResult b10 = bowen_bracket(cf, 10, 1e-10);
    DimensionResult b12 = bowen_bracket(cf, 12, 1e-10);
    CHECK(b10.lower >= b8.lower - 1e-9);
    CHECK(b10.upper <= b8.upper + 1e-9);
    CHECK(b12.lower >= b10.lower - 1e-9);
    CHECK(b12.upper <= b10.upper + 1e-9);
    CHECK(b12.width() <= 0.02);
    // literature value for the bounded-quotient set {1,2}: external sanity only
    CHECK(b12.lower < 0.5313);
    CHECK(b12.upper > 0.5313);
}

TEST_CASE("bowen bracket: doubling levels nest") {
    Ifs1D cf = Ifs1D::preset("cf12");
    DimensionResult b5 = bowen_bracket(cf, 5, 1e-10);
    DimensionResult b10 = bowen_bracket(cf, 10, 1e-10);
    CHECK(b10.lower >= b5.lower - 1e-9);
    CHECK(b10.upper <= b5.upper + 1e-9);
}

TEST_CASE("default level respects the 2^20 word cap") {
    CHECK(default_bowen_level(Ifs1D::preset("cf12")) == 20);
    CHECK(default_bowen_level(Ifs1D::preset("overlap_demo")) == 12);  // 3^12 < 2^20 < 3^13
}

TEST_CASE("dimension info gates dim_H on certified separation") {
    DimensionInfo cantor = dimension_info(Ifs1D::preset("cantor3"));
    CHECK(cantor.separation_certified);
    CHECK(cantor.equal_ratio);
    CHECK(cantor.dim_h_lower == cantor.dim_s.lower);
    CHECK(cantor.plugin_value() == doctest::Approx(kLog2Log3).epsilon(1e-12));

    DimensionInfo demo = dimension_info(Ifs1D::preset("overlap_demo"));
    CHECK_FALSE(demo.separation_certified);
    CHECK(demo.dim_h_lower == 0.0);
    CHECK(demo.dim_h_upper == doctest::Approx(1.0).epsilon(1e-9));

    DimensionInfo cf = dimension_info(Ifs1D::preset("cf12"), 8);
    CHECK(cf.separation_certified);
    CHECK(cf.dim_s.method == DimensionResult::Method::pressure_bracket);
}
