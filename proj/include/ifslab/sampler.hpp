#pragma once

#include <vector>

#include "ifslab/enumerate.hpp"
#include "ifslab/ifs.hpp"
#include "ifslab/rng.hpp"

namespace ifslab {

// Draws i.i.d. blocks of digits with fixed weights. For similarity systems the
// blocks are single digits weighted r_i^{dim}; for moebius systems blocks of
// base_level digits weighted Diam(X_I)^{s*} stand in for the natural measure
// (comparable, not exact).
struct NaturalSampler {
    std::vector<double> weights;       // normalized, cumulative checked to 1e-12
    std::vector<Word> blocks;          // one word per weight
    std::uint64_t seed = 1;

    static NaturalSampler from_digit_weights(std::vector<double> w, std::uint64_t seed);
    static NaturalSampler for_ifs(const Ifs1D& ifs, double dim_exponent, int base_level,
                                  std::uint64_t seed);

    // i.i.d. blocks, truncated to exactly `length` digits; the stream for
    // sample_index is independent of all other indices
    Word sample_coding(int length, std::uint64_t sample_index = 0) const;
};

}  // namespace ifslab
