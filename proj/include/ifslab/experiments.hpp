#pragma once

#include "ifslab/khintchine.hpp"

namespace ifslab {

// #{ words in {0,1}^m with at least ceil(m*num/den) ones }, exact.
Int sigma_count(int m, int num = 5, int den = 8);

// brute-force enumeration oracle, m <= 30
Int sigma_count_bruteforce(int m, int num = 5, int den = 8);

struct HoeffdingBound {
    double value;     // (2 e^{-1/32})^m
    double t;         // 1/8
    double exponent;  // -2 m t^2
};
HoeffdingBound hoeffding_bound(int m);

// log2(sigma_count(m)) <= m log2(2 e^{-1/32}), checked through exact counts
bool sigma_count_below_hoeffding(int m);

struct Example21Tail {
    double geometric;   // 4 e^{-N/32} / (1 - e^{-1/32})
    double sharp;       // exact counts to enum_bound, geometric beyond
    int enum_bound;
};
Example21Tail example21_tail(int n_first, int enum_bound = 1000);

struct WindowReport {
    std::vector<int> window_start;
    std::vector<double> hitter_fraction;  // of k-hitters inside each window
    int window_len = 21;
    int k = 5;
    long samples = 0;
    double sigma_bound = 0;  // max sqrt(f(1-f)/samples) over windows
};

// Covered-rank experiment for the radius-2^{-m} ball family on the {3x/4,
// x/4+3/4} system under Lebesgue sampling. contrast_c, when set, replaces the
// radii by Diam(X_I) * c.
WindowReport example21_montecarlo(const std::vector<int>& window_starts, int window_len,
                                  long samples, int k, std::uint64_t seed,
                                  std::optional<double> contrast_c = std::nullopt,
                                  ExecMode mode = ExecMode::parallel);

struct Example22Report {
    int j_len = 1;
    // exact partial sums; eq11 starts at n = |J|, eq12 at n = 1
    std::vector<Rat> eq11_partial;
    std::vector<Rat> eq12_partial;
    int exact_ranks = 0;
    // strict bound on the eq11 sum past rank N (integral comparison)
    Rat eq11_tail_bound_at(long n) const;
    double window_fraction = 0;  // k-hitter fraction, J-restricted balls
    int window_start = 0;
    int window_len = 0;
    long samples = 0;
};

Example22Report example22_check(const Word& J, int exact_ranks, long samples, std::uint64_t seed,
                                int window_start = 60, int window_len = 21, int k = 1,
                                ExecMode mode = ExecMode::parallel);

struct BlockScan {
    std::vector<int> positions;  // 0-based occurrence positions, including 0
    bool certified = false;      // prefix never recurs past position 0
    int prefix_len = 0;
    int coding_len = 0;
};
BlockScan leading_block_scan(const Word& coding, int l);

}  // namespace ifslab
