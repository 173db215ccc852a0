#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ifslab/khintchine.hpp"

using namespace ifslab;

namespace {
const double kDim = std::log(2.0) / std::log(3.0);

struct RatSum {
    Rat v;
    RatSum& operator+=(const RatSum& o) {
        v += o.v;
        return *this;
    }
};
}  // namespace

TEST_CASE("level_reduce: parallel equals serial exactly on rationals") {
    for (const char* name : {"cantor3", "ex21", "cf12", "overlap_demo"}) {
        Ifs1D ifs = Ifs1D::preset(name);
        auto leaf = [](const Word&, const ComposedMap&, const RatInterval& iv) {
            return RatSum{iv.diameter()};
        };
        for (int n : {1, 2, 5, 8}) {
            Rat serial = level_reduce<RatSum>(ifs, n, RatSum{}, leaf, ExecMode::serial).v;
            Rat parallel = level_reduce<RatSum>(ifs, n, RatSum{}, leaf, ExecMode::parallel).v;
            CHECK(serial == parallel);
        }
    }
}

TEST_CASE("derivative power sums: parallel vs serial reference") {
    Ifs1D cf = Ifs1D::preset("cf12");
    for (double s : {0.0, 0.3, 0.53, 1.0}) {
        MinMaxSums a = deriv_power_level_sums(cf, 10, s, ExecMode::serial);
        MinMaxSums b = deriv_power_level_sums(cf, 10, s, ExecMode::parallel);
        CHECK(a.min_sum == doctest::Approx(b.min_sum).epsilon(1e-13));
        CHECK(a.max_sum == doctest::Approx(b.max_sum).epsilon(1e-13));
    }
}

TEST_CASE("diameter power sums: parallel vs serial reference") {
    for (const char* name : {"ex21", "cf12"}) {
        Ifs1D ifs = Ifs1D::preset(name);
        double a = diam_power_level_sum(ifs, 9, 0.7, ExecMode::serial);
        double b = diam_power_level_sum(ifs, 9, 0.7, ExecMode::parallel);
        CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
}

TEST_CASE("derivative cache agrees with the direct sums") {
    Ifs1D cf = Ifs1D::preset("cf12");
    DerivCache cache = build_deriv_cache(cf, 9, ExecMode::parallel);
    CHECK(cache.extremes.size() == 512);
    for (double s : {0.2, 0.5313, 0.9}) {
        MinMaxSums direct = deriv_power_level_sums(cf, 9, s, ExecMode::serial);
        MinMaxSums cached = cache.power_sums(s, ExecMode::parallel);
        CHECK(cached.min_sum == doctest::Approx(direct.min_sum).epsilon(1e-13));
        CHECK(cached.max_sum == doctest::Approx(direct.max_sum).epsilon(1e-13));
    }
}

TEST_CASE("cache order is lexicographic: serial build equals parallel build") {
    Ifs1D cf = Ifs1D::preset("cf12");
    DerivCache a = build_deriv_cache(cf, 8, ExecMode::serial);
    DerivCache b = build_deriv_cache(cf, 8, ExecMode::parallel);
    REQUIRE(a.extremes.size() == b.extremes.size());
    for (std::size_t i = 0; i < a.extremes.size(); ++i) {
        CHECK(a.extremes[i].first == b.extremes[i].first);
        CHECK(a.extremes[i].second == b.extremes[i].second);
    }
}

TEST_CASE("hit experiment: parallel and serial produce identical hit matrices") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 17);
    ApproxFunction af;
    af.theta = ThetaRule::power(1, -1.0 / kDim);
    std::vector<int> ranks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};

    HitExperimentOptions serial_opt;
    serial_opt.seed = 17;
    serial_opt.mode = ExecMode::serial;
    HitExperimentOptions parallel_opt = serial_opt;
    parallel_opt.mode = ExecMode::parallel;

    HitStatistics a = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 120, 5,
                                            sampler, kDim, serial_opt);
    HitStatistics b = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 120, 5,
                                            sampler, kDim, parallel_opt);
    CHECK(a.hit == b.hit);
    CHECK(a.per_sample_counts == b.per_sample_counts);
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        REQUIRE(a.covered_measure[j].has_value() == b.covered_measure[j].has_value());
        if (a.covered_measure[j]) CHECK(*a.covered_measure[j] == *b.covered_measure[j]);
    }
}

TEST_CASE("bowen bracket is mode-independent within bisection tolerance") {
    Ifs1D cf = Ifs1D::preset("cf12");
    DimensionResult a = bowen_bracket(cf, 8, 1e-10, ExecMode::serial);
    DimensionResult b = bowen_bracket(cf, 8, 1e-10, ExecMode::parallel);
    CHECK(a.lower == doctest::Approx(b.lower).epsilon(1e-9));
    CHECK(a.upper == doctest::Approx(b.upper).epsilon(1e-9));
}
