#include "ifslab/dimension.hpp"

#include <cmath>

namespace ifslab {

DimensionResult similarity_dimension(const std::vector<Rat>& ratios, double tol) {
    if (ratios.empty()) throw ValidationError("similarity_dimension: empty ratio list");
    if (tol <= 0) throw ValidationError("similarity_dimension: tol must be positive");
    double rmax = 0;
    for (const Rat& r : ratios) {
        if (!(r > 0 && r < 1)) throw ValidationError("ratios must lie in (0,1)");
        rmax = std::max(rmax, to_double(r));
    }
    auto f = [&](double s) {
        double sum = 0;
        for (const Rat& r : ratios) sum += std::pow(to_double(r), s);
        return sum - 1.0;
    };
    double lo = 0.0;
    double hi = std::log(static_cast<double>(ratios.size())) / std::log(1.0 / rmax) + 1.0;
    // f is strictly decreasing; f(lo) >= 0 by construction
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    DimensionResult r;
    r.lower = lo;
    r.upper = hi;
    r.method = DimensionResult::Method::exact_similarity;
    r.level = 0;
    r.tol = tol;
    return r;
}

PressureBounds pressure_bounds(const Ifs1D& ifs, double s, int n, ExecMode mode,
                               const Budgets& budgets) {
    if (n < 1) throw ValidationError("pressure level must be >= 1");
    if (s < 0) throw ValidationError("pressure exponent must be >= 0");
    MinMaxSums sums = deriv_power_level_sums(ifs, n, s, mode, budgets);
    PressureBounds p;
    p.lower = std::log(sums.min_sum) / n;
    p.upper = std::log(sums.max_sum) / n;
    return p;
}

namespace {

double bisect_root_on_cache(const DerivCache& cache, double tol, bool upper_surrogate,
                            ExecMode mode) {
    auto value = [&](double s) {
        MinMaxSums sums = cache.power_sums(s, mode);
        double total = upper_surrogate ? sums.max_sum : sums.min_sum;
        return std::log(total) / cache.level;
    };
    double lo = 0.0;
    if (value(lo) <= 0)
        throw ValidationError("pressure at s=0 is not positive; bracket failed to seal");
    double hi = 2.0;
    while (value(hi) >= 0) {
        hi *= 2;
        if (hi > 64)
            throw ValidationError(
                "pressure surrogate stayed positive over the scan range; bracket failed to seal");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (value(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DimensionResult bowen_bracket(const Ifs1D& ifs, int n, double tol, ExecMode mode,
                              const Budgets& budgets) {
    if (tol <= 0) throw ValidationError("bowen_bracket: tol must be positive");
    DerivCache cache = build_deriv_cache(ifs, n, mode, budgets);
    double root_lower_surrogate = bisect_root_on_cache(cache, tol, false, mode);
    double root_upper_surrogate = bisect_root_on_cache(cache, tol, true, mode);
    DimensionResult r;
    r.lower = root_lower_surrogate - tol;
    r.upper = root_upper_surrogate + tol;
    r.method = DimensionResult::Method::pressure_bracket;
    r.level = n;
    r.tol = tol;
    return r;
}

int default_bowen_level(const Ifs1D& ifs) {
    const std::uint64_t cap = std::uint64_t(1) << 20;
    std::uint64_t words = 1;
    int n = 0;
    while (words <= cap / static_cast<std::uint64_t>(ifs.digit_count())) {
        words *= static_cast<std::uint64_t>(ifs.digit_count());
        ++n;
    }
    return n;
}

DimensionInfo dimension_info(const Ifs1D& ifs, int level, double tol, ExecMode mode,
                             const Budgets& budgets) {
    DimensionInfo info;
    SeparationResult sep = check_separation(ifs);
    info.separation = sep.verdict;
    info.separation_certified = sep.certified && sep.verdict != Separation::Overlapping;

    if (ifs.kind == MapKind::similarity) {
        std::vector<Rat> ratios;
        for (const auto& m : ifs.sim) ratios.push_back(m.ratio);
        info.equal_ratio = true;
        for (const auto& m : ifs.sim)
            if (m.ratio != ifs.sim.front().ratio) info.equal_ratio = false;
        if (info.equal_ratio) {
            // closed form log m / log(1/r)
            double d = std::log(static_cast<double>(ifs.digit_count())) /
                       std::log(1.0 / to_double(ifs.sim.front().ratio));
            info.dim_s = DimensionResult{d, d, DimensionResult::Method::exact_similarity, 0, 0.0};
        } else {
            info.dim_s = similarity_dimension(ratios, tol);
        }
    } else {
        int n = level > 0 ? level : default_bowen_level(ifs);
        info.dim_s = bowen_bracket(ifs, n, tol, mode, budgets);
    }

    if (info.separation_certified) {
        info.dim_h_lower = info.dim_s.lower;
        info.dim_h_upper = info.dim_s.upper;
    } else {
        info.dim_h_lower = 0.0;
        info.dim_h_upper = info.dim_s.upper;
    }
    return info;
}

}  // namespace ifslab
