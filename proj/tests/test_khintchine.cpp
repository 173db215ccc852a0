#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ifslab/khintchine.hpp"

using namespace ifslab;

namespace {
const double kDim = std::log(2.0) / std::log(3.0);

ApproxFunction af_power(double c, double e) {
    ApproxFunction af;
    af.theta = ThetaRule::power(c, e);
    return af;
}
}  // namespace

TEST_CASE("theta rules parse and evaluate") {
    ThetaRule p = ThetaRule::parse("power:1,-1.5849625007211562");
    CHECK(p(1) == doctest::Approx(1.0));
    CHECK(p(2) == doctest::Approx(std::pow(2.0, -1.5849625007211562)));
    CHECK(p.monotone_decreasing());

    ThetaRule c = ThetaRule::parse("const:0.25");
    CHECK(c(7) == 0.25);

    ThetaRule e = ThetaRule::parse("exp:1,0.5");
    CHECK(e(3) == doctest::Approx(0.125));

    ThetaRule t = ThetaRule::parse("table:0.5,0.25");
    CHECK(t(2) == 0.25);
    CHECK_THROWS_AS(t(3), ValidationError);
    CHECK_THROWS_AS(ThetaRule::parse("nope:1"), ValidationError);
    CHECK_THROWS_AS(ThetaRule::parse("power:1"), ValidationError);
    CHECK_THROWS_AS(ThetaRule::parse("const:-2"), ValidationError);
}

TEST_CASE("psi_of: diameter weighting and the rank-only bypass") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    Cylinder c2 = cylinder_of(cantor, {0, 1});

    ApproxFunction unit = af_power(1, 0);
    CHECK(psi_of(unit, c2) == doctest::Approx(1.0 / 9).epsilon(1e-14));

    // theta(n) = n^{-1/dim}: at |I| = 4 the radius is (1/81) * 4^{-log3/log2} = 1/729
    ApproxFunction borderline = af_power(1, -1.0 / kDim);
    Cylinder c4 = cylinder_of(cantor, {0, 1, 0, 1});
    CHECK(psi_of(borderline, c4) == doctest::Approx(1.0 / 729).epsilon(1e-12));

    // rank-only radii 2^{-|I|} need the bypass
    ApproxFunction bypass;
    bypass.theta = ThetaRule::exponential(1.0, 0.5);
    bypass.diameter_bypass = true;
    CHECK(psi_of(bypass, c4) == doctest::Approx(1.0 / 16));

    ApproxFunction bad = af_power(1, 0);
    bad.exponent_ratio = 0.5;
    CHECK_THROWS_AS(psi_of(bad, c4), ValidationError);
}

TEST_CASE("divergence partial sums: the three cantor regimes") {
    Ifs1D cantor = Ifs1D::preset("cantor3");

    // theta == 1: every level term is 1, S_N = N
    DivergenceSums unit = divergence_partial_sums(cantor, af_power(1, 0), kDim, 200);
    CHECK(unit.closed_form);
    CHECK(unit.partial.back() == doctest::Approx(200.0).epsilon(1e-9));

    // theta(n) = n^{-1/dim}: terms are 1/n, S_N grows like log N
    DivergenceSums log_growth =
        divergence_partial_sums(cantor, af_power(1, -1.0 / kDim), kDim, 100000);
    double s_n = log_growth.partial.back();
    CHECK(s_n / std::log(100000.0) > 1.0);
    CHECK(s_n / std::log(100000.0) < 1.1);
    for (std::size_t i = 1; i < 100; ++i)
        CHECK(log_growth.partial[i] >= log_growth.partial[i - 1]);

    // theta(n) = 2^{-n}: bounded by the geometric series
    ApproxFunction geo;
    geo.theta = ThetaRule::exponential(1.0, 0.5);
    DivergenceSums conv = divergence_partial_sums(cantor, geo, kDim, 400);
    double ratio = std::pow(2.0, -kDim);
    CHECK(conv.partial.back() <= ratio / (1 - ratio) + 1e-9);

    // constant theta: S_N = N c^dim exactly
    DivergenceSums scaled = divergence_partial_sums(cantor, af_power(0.5, 0), kDim, 50);
    CHECK(scaled.partial.back() ==
          doctest::Approx(50.0 * std::pow(0.5, kDim)).epsilon(1e-10));
}

TEST_CASE("divergence sums for moebius systems enumerate within budget") {
    Ifs1D cf = Ifs1D::preset("cf12");
    DivergenceSums d = divergence_partial_sums(cf, af_power(1, 0), 0.531, 8);
    CHECK_FALSE(d.closed_form);
    CHECK(d.partial.size() == 8);
    for (std::size_t i = 1; i < d.partial.size(); ++i) CHECK(d.partial[i] > d.partial[i - 1]);

    Budgets tiny;
    tiny.max_words = 8;
    CHECK_THROWS_AS(divergence_partial_sums(cf, af_power(1, 0), 0.531, 8,
                                            ExecMode::serial, tiny),
                    ResourceError);
}

TEST_CASE("duffin-schaeffer ratio: bounded, decaying, and flagged regimes") {
    // theta(n) = n^{-1/dim}: both A and B grow like (log Q)^2, ratio stays bounded
    DsRatioReport borderline = dufschaeffer_ratio(ThetaRule::power(1, -1.0 / kDim), kDim, 100000);
    CHECK(borderline.max_ratio < 1.0);
    CHECK(borderline.final_ratio > 0.5);
    CHECK(borderline.clamped);  // theta(1) = 1 trips the >= 1 flag; its term is 0

    // constant theta: A linear, B quadratic, ratio decays to 0
    DsRatioReport constant = dufschaeffer_ratio(ThetaRule::constant(0.5), kDim, 100000);
    CHECK(constant.final_ratio < 0.01);
    CHECK(constant.final_ratio < constant.ratio_at(100) / 100.0);

    // theta(n) = e^{-n}: ratio bounded but the base series converges too
    DsRatioReport exp_decay =
        dufschaeffer_ratio(ThetaRule::exponential(1.0, std::exp(-1.0)), kDim, 600);
    CHECK(exp_decay.max_ratio < 10.0);

    // theta >= 1 entries get their log term clamped and flagged
    DsRatioReport clamped = dufschaeffer_ratio(ThetaRule::constant(1.5), kDim, 100);
    CHECK(clamped.clamped);

    CHECK_THROWS_AS(dufschaeffer_ratio(ThetaRule::constant(0.5), 0.0, 100), ValidationError);
}

TEST_CASE("target cylinder: minimal nesting depths") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    ZPoint z0 = ZPoint::fixpoint(0);

    // equal ratios 1/3 with strict inequality: 3^{-N} < 1/3 forces N = 2
    TargetCylinderResult t = target_cylinder(cantor, {0, 1}, z0, rat(1, 3));
    CHECK(t.extra_depth == 2);
    CHECK(t.cylinder.word.size() == 4);

    // theta >= 1 still nests one digit
    TargetCylinderResult t1 = target_cylinder(cantor, {0}, z0, Rat(1));
    CHECK(t1.extra_depth == 1);

    // ex21 with z = (1,1,...): diameters shrink by 3/4, (3/4)^3 < 1/2 <= (3/4)^2
    Ifs1D ex21 = Ifs1D::preset("ex21");
    TargetCylinderResult t3 = target_cylinder(ex21, {0}, ZPoint::fixpoint(0), rat(1, 2));
    CHECK(t3.extra_depth == 3);

    // the word extends I and the cylinder sits inside the covering ball
    Word expect_prefix{0, 1};
    CHECK(std::equal(expect_prefix.begin(), expect_prefix.end(), t.cylinder.word.begin()));

    // a short explicit z coding raises the input error with a length estimate
    ZPoint shortz = ZPoint::from_coding({0});
    CHECK_THROWS_AS(target_cylinder(cantor, {0, 1}, shortz, rat(1, 1024)), ValidationError);
}

TEST_CASE("union measure: merges exactly") {
    CHECK(union_measure_1d({RatInterval(Rat(0), rat(1, 2)), RatInterval(rat(1, 4), rat(3, 4))}) ==
          rat(3, 4));
    CHECK(union_measure_1d({RatInterval(Rat(0), rat(1, 4)), RatInterval(rat(1, 2), rat(3, 4))}) ==
          rat(1, 2));
    CHECK(union_measure_1d({}) == Rat(0));
    // union is at most the sum of lengths
    std::vector<RatInterval> balls;
    for (int i = 0; i < 20; ++i)
        balls.emplace_back(rat(i, 40), rat(i, 40) + rat(1, 30));
    Rat sum_lengths = Rat(20) * rat(1, 30);
    CHECK(union_measure_1d(balls) <= sum_lengths);
}

TEST_CASE("hit experiment: theta == 1 hits every rank") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 3);
    std::vector<int> ranks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    HitExperimentOptions opt;
    opt.seed = 3;
    HitStatistics st = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af_power(1, 0), ranks,
                                             100, 10, sampler, kDim, opt);
    CHECK(st.fraction_at_least(10) == 1.0);  // x always lies in its own cylinder's ball
    CHECK(st.mean_count() == 10.0);
}

TEST_CASE("hit experiment: radius scaling is sample-wise monotone") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 11);
    std::vector<int> ranks;
    for (int n = 1; n <= 18; ++n) ranks.push_back(n);
    ApproxFunction af = af_power(1, -1.0 / kDim);

    HitExperimentOptions base;
    base.seed = 11;
    HitStatistics st1 = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 150, 5,
                                              sampler, kDim, base);
    HitExperimentOptions scaled = base;
    scaled.psi_scale = 2.5;
    HitStatistics st2 = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 150, 5,
                                              sampler, kDim, scaled);
    for (std::size_t s = 0; s < 150; ++s) {
        CHECK(st2.per_sample_counts[s] >= st1.per_sample_counts[s]);
        for (std::size_t j = 0; j < ranks.size(); ++j)
            CHECK(st2.hit[s][j] >= st1.hit[s][j]);
    }
}

TEST_CASE("hit experiment: covered measure never exceeds the radius sum") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 5);
    std::vector<int> ranks{1, 2, 3, 4, 5, 6, 7, 8};
    ApproxFunction af = af_power(1, -1.0 / kDim);
    HitExperimentOptions opt;
    opt.seed = 5;
    HitStatistics st = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 10, 3,
                                             sampler, kDim, opt);
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        REQUIRE(st.covered_measure[j].has_value());
        int n = ranks[j];
        // sum over the rank of 2 Psi(I) = 2^{n+1} * (3^{-n})^1 * theta(n)
        double bound = std::pow(2.0, n + 1) * std::pow(3.0, -n) * af.theta(n);
        CHECK(to_double(*st.covered_measure[j]) <= bound * (1 + 1e-9));
        CHECK(*st.covered_measure[j] >= 0);
        CHECK(*st.covered_measure[j] <= cantor.hull.diameter());
    }
    // cumulative fractions are nondecreasing rank by rank
    auto cum = st.cumulative_fraction(1);
    for (std::size_t j = 1; j < cum.size(); ++j) CHECK(cum[j] >= cum[j - 1]);
}

TEST_CASE("hit experiment: deterministic across repeat runs") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 99);
    std::vector<int> ranks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    ApproxFunction af = af_power(1, -1.0 / kDim);
    HitExperimentOptions opt;
    opt.seed = 99;
    HitStatistics a = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 64, 4,
                                            sampler, kDim, opt);
    HitStatistics b = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, 64, 4,
                                            sampler, kDim, opt);
    CHECK(a.per_sample_counts == b.per_sample_counts);
    CHECK(a.hit == b.hit);
}

TEST_CASE("cover sums: geometric tails and monotonicity in s") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    ApproxFunction af;
    af.theta = ThetaRule::exponential(1.0, 0.5);  // Psi = Diam * 2^{-n}

    CoverSum head = convergence_cover_sum(cantor, af, kDim, 40, 60);
    REQUIRE(head.tail_bound.has_value());
    CHECK(head.value + *head.tail_bound < 1e-3);

    CoverSum bigger_s = convergence_cover_sum(cantor, af, kDim + 0.2, 40, 60);
    CHECK(bigger_s.value < head.value);

    CHECK_THROWS_AS(convergence_cover_sum(cantor, af, kDim, 10, 5), ValidationError);
}

TEST_CASE("z points parse and realize") {
    Ifs1D cantor = Ifs1D::preset("cantor3");
    ZPoint z = ZPoint::parse("fixpoint:1", 2);
    CHECK(z.has_exact_value(cantor));
    CHECK(z.exact_value(cantor) == Rat(0));
    CHECK(ZPoint::parse("fixpoint:2", 2).exact_value(cantor) == Rat(1));
    CHECK_THROWS_AS(ZPoint::parse("fixpoint:3", 2), ValidationError);

    ZPoint w = ZPoint::parse("1,2,1", 2);
    CHECK(w.coding == Word{0, 1, 0});
    PointApprox p = w.realize(cantor, 3);
    CHECK(p.error == rat(1, 54));

    Ifs1D cf = Ifs1D::preset("cf12");
    ZPoint zf = ZPoint::fixpoint(0);
    CHECK_FALSE(zf.has_exact_value(cf));
    PointApprox q = zf.realize(cf, 30);
    CHECK(std::abs(to_double(q.value) - (std::sqrt(5.0) - 1) / 2) < 1e-10);
}
