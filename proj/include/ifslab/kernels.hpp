#pragma once

#include "ifslab/enumerate.hpp"

namespace ifslab {

struct MinMaxSums {
    double min_sum = 0.0;
    double max_sum = 0.0;
    MinMaxSums& operator+=(const MinMaxSums& o) {
        min_sum += o.min_sum;
        max_sum += o.max_sum;
        return *this;
    }
};

// sum over I in D^n of (min |phi_I'|)^s and (max |phi_I'|)^s, extremes taken
// at the hull endpoints (exact for monotone derivatives). For similarities the
// two sums coincide leaf by leaf.
MinMaxSums deriv_power_level_sums(const Ifs1D& ifs, int n, double s, ExecMode mode,
                                  const Budgets& budgets = {});

// sum over I in D^n of Diam(X_I)^p
double diam_power_level_sum(const Ifs1D& ifs, int n, double p, ExecMode mode,
                            const Budgets& budgets = {});

struct DoubleSum {
    double v = 0.0;
    DoubleSum& operator+=(const DoubleSum& o) {
        v += o.v;
        return *this;
    }
};

// Per-cylinder derivative extremes for one level, cached so a bisection can
// re-evaluate the pressure sums at many s without re-walking the tree.
// Entries are in lexicographic word order.
struct DerivCache {
    int level = 0;
    std::vector<std::pair<double, double>> extremes;  // (min, max) per cylinder

    // (sum min^s, sum max^s), summed in fixed 4096-entry chunks
    MinMaxSums power_sums(double s, ExecMode mode) const;
};

DerivCache build_deriv_cache(const Ifs1D& ifs, int n, ExecMode mode, const Budgets& budgets = {});

}  // namespace ifslab
