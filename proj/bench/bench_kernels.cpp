// Benchmark comparing the serial reference kernels against the OpenMP
// versions. Checks that both modes agree before timing them.
//
//   ./bench_kernels [--level N] [--samples S]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "ifslab/khintchine.hpp"

using namespace ifslab;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double time_ms(Fn&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int level = 16;
    long samples = 400;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--level")) level = std::atoi(argv[i + 1]);
        if (!std::strcmp(argv[i], "--samples")) samples = std::atol(argv[i + 1]);
    }
    std::printf("threads: %d\n", omp_get_max_threads());

    const double dim = std::log(2.0) / std::log(3.0);

    {
        Ifs1D cf = Ifs1D::preset("cf12");
        MinMaxSums a, b;
        double ts = time_ms([&] { a = deriv_power_level_sums(cf, level, 0.53, ExecMode::serial); }, 3);
        double tp = time_ms([&] { b = deriv_power_level_sums(cf, level, 0.53, ExecMode::parallel); }, 3);
        bool agree = std::abs(a.min_sum - b.min_sum) <= 1e-12 * std::abs(a.min_sum) &&
                     std::abs(a.max_sum - b.max_sum) <= 1e-12 * std::abs(a.max_sum);
        report("pressure level sums", ts, tp, agree);
    }

    {
        Ifs1D cf = Ifs1D::preset("cf12");
        DerivCache cache = build_deriv_cache(cf, level, ExecMode::parallel);
        MinMaxSums a, b;
        double ts = time_ms([&] { a = cache.power_sums(0.53, ExecMode::serial); }, 5);
        double tp = time_ms([&] { b = cache.power_sums(0.53, ExecMode::parallel); }, 5);
        report("cached power sums", ts, tp,
               a.min_sum == b.min_sum && a.max_sum == b.max_sum);
    }

    {
        Ifs1D ex21 = Ifs1D::preset("ex21");
        double a = 0, b = 0;
        double ts = time_ms([&] { a = diam_power_level_sum(ex21, level, dim, ExecMode::serial); }, 3);
        double tp = time_ms([&] { b = diam_power_level_sum(ex21, level, dim, ExecMode::parallel); }, 3);
        report("diameter power sums", ts, tp, std::abs(a - b) <= 1e-12 * std::abs(a));
    }

    {
        Ifs1D cantor = Ifs1D::preset("cantor3");
        NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, 1);
        ApproxFunction af;
        af.theta = ThetaRule::power(1, -1.0 / dim);
        std::vector<int> ranks;
        for (int n = 1; n <= 24; ++n) ranks.push_back(n);
        HitExperimentOptions so;
        so.mode = ExecMode::serial;
        so.cover_cap_words = 0;
        HitExperimentOptions po = so;
        po.mode = ExecMode::parallel;
        HitStatistics a, b;
        double ts = time_ms(
            [&] {
                a = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, samples, 3,
                                          sampler, dim, so);
            },
            2);
        double tp = time_ms(
            [&] {
                b = limsup_hit_experiment(cantor, ZPoint::fixpoint(0), af, ranks, samples, 3,
                                          sampler, dim, po);
            },
            2);
        report("monte-carlo hit counting", ts, tp, a.hit == b.hit);
    }

    return 0;
}
