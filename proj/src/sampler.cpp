#include "ifslab/sampler.hpp"

#include <cmath>
#include <numeric>

namespace ifslab {

static void normalize_and_check(std::vector<double>& w) {
    if (w.empty()) throw ValidationError("sampler needs at least one weight");
    double total = 0;
    for (double x : w) {
        if (x < 0) throw ValidationError("sampler weights must be nonnegative");
        total += x;
    }
    if (total <= 0) throw ValidationError("sampler weights must not all vanish");
    for (double& x : w) x /= total;
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-12) throw ValidationError("sampler weights failed to normalize");
}

NaturalSampler NaturalSampler::from_digit_weights(std::vector<double> w, std::uint64_t seed) {
    NaturalSampler s;
    normalize_and_check(w);
    s.weights = std::move(w);
    s.blocks.reserve(s.weights.size());
    for (int i = 0; i < static_cast<int>(s.weights.size()); ++i) s.blocks.push_back(Word{i});
    s.seed = seed;
    return s;
}

NaturalSampler NaturalSampler::for_ifs(const Ifs1D& ifs, double dim_exponent, int base_level,
                                       std::uint64_t seed) {
    NaturalSampler s;
    s.seed = seed;
    if (ifs.kind == MapKind::similarity) {
        std::vector<double> w;
        for (const auto& m : ifs.sim) w.push_back(std::pow(to_double(m.ratio), dim_exponent));
        normalize_and_check(w);
        s.weights = std::move(w);
        for (int i = 0; i < ifs.digit_count(); ++i) s.blocks.push_back(Word{i});
        return s;
    }
    // moebius: weight level-k cylinders by Diam^{s*}
    std::vector<double> w;
    for (const Cylinder& c : enumerate_level(ifs, base_level)) {
        s.blocks.push_back(c.word);
        w.push_back(std::pow(to_double(c.diameter()), dim_exponent));
    }
    normalize_and_check(w);
    s.weights = std::move(w);
    return s;
}

Word NaturalSampler::sample_coding(int length, std::uint64_t sample_index) const {
    if (length < 1) throw ValidationError("coding length must be >= 1");
    SplitMix64 rng(SplitMix64::derive(seed, sample_index));
    Word out;
    out.reserve(static_cast<std::size_t>(length));
    while (static_cast<int>(out.size()) < length) {
        double u = rng.next_double();
        double acc = 0;
        std::size_t pick = weights.size() - 1;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        for (int d : blocks[pick]) {
            if (static_cast<int>(out.size()) == length) break;
            out.push_back(d);
        }
    }
    return out;
}

}  // namespace ifslab
