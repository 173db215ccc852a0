#include "ifslab/kernels.hpp"

#include <cmath>

namespace ifslab {

MinMaxSums deriv_power_level_sums(const Ifs1D& ifs, int n, double s, ExecMode mode,
                                  const Budgets& budgets) {
    if (ifs.kind == MapKind::similarity) {
        return level_reduce<MinMaxSums>(
            ifs, n, MinMaxSums{},
            [&](const Word&, const ComposedMap& m, const RatInterval&) {
                double v = std::pow(to_double(std::get<SimilarityMap>(m).ratio), s);
                return MinMaxSums{v, v};
            },
            mode, budgets);
    }
    const Rat lo = ifs.hull.lo, hi = ifs.hull.hi;
    return level_reduce<MinMaxSums>(
        ifs, n, MinMaxSums{},
        [&](const Word&, const ComposedMap& m, const RatInterval&) {
            const auto& mm = std::get<MoebiusMap>(m);
            double d1 = to_double(mm.deriv_abs_at(lo));
            double d2 = to_double(mm.deriv_abs_at(hi));
            if (d1 > d2) std::swap(d1, d2);
            return MinMaxSums{std::pow(d1, s), std::pow(d2, s)};
        },
        mode, budgets);
}

double diam_power_level_sum(const Ifs1D& ifs, int n, double p, ExecMode mode,
                            const Budgets& budgets) {
    return level_reduce<DoubleSum>(
               ifs, n, DoubleSum{},
               [&](const Word&, const ComposedMap&, const RatInterval& iv) {
                   return DoubleSum{std::pow(to_double(iv.diameter()), p)};
               },
               mode, budgets)
        .v;
}

namespace {

struct ExtremesBlock {
    std::vector<std::pair<double, double>> v;
    ExtremesBlock& operator+=(const ExtremesBlock& o) {
        v.insert(v.end(), o.v.begin(), o.v.end());
        return *this;
    }
};

}  // namespace

DerivCache build_deriv_cache(const Ifs1D& ifs, int n, ExecMode mode, const Budgets& budgets) {
    DerivCache cache;
    cache.level = n;
    cache.extremes.reserve(checked_level_size(ifs.digit_count(), n, budgets.max_words));
    const Rat lo = ifs.hull.lo, hi = ifs.hull.hi;
    auto leaf = [&](const Word&, const ComposedMap& m, const RatInterval&) {
        double d1, d2;
        if (ifs.kind == MapKind::similarity) {
            d1 = d2 = to_double(std::get<SimilarityMap>(m).ratio);
        } else {
            const auto& mm = std::get<MoebiusMap>(m);
            d1 = to_double(mm.deriv_abs_at(lo));
            d2 = to_double(mm.deriv_abs_at(hi));
            if (d1 > d2) std::swap(d1, d2);
        }
        ExtremesBlock b;
        b.v.emplace_back(d1, d2);
        return b;
    };
    ExtremesBlock all = level_reduce<ExtremesBlock>(ifs, n, ExtremesBlock{}, leaf, mode, budgets);
    cache.extremes = std::move(all.v);
    return cache;
}

MinMaxSums DerivCache::power_sums(double s, ExecMode mode) const {
    const std::size_t chunk = 4096;
    const std::size_t nchunks = (extremes.size() + chunk - 1) / chunk;
    std::vector<MinMaxSums> partial(nchunks);
    const bool parallel = mode == ExecMode::parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
        std::size_t b = static_cast<std::size_t>(ci) * chunk;
        std::size_t e = std::min(extremes.size(), b + chunk);
        MinMaxSums acc;
        for (std::size_t i = b; i < e; ++i) {
            acc.min_sum += std::pow(extremes[i].first, s);
            acc.max_sum += std::pow(extremes[i].second, s);
        }
        partial[static_cast<std::size_t>(ci)] = acc;
    }
    MinMaxSums total;
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace ifslab
