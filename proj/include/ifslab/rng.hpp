#pragma once

#include <cstdint>

namespace ifslab {

// splitmix64: tiny, platform-independent, good enough for Monte-Carlo digit
// draws. Streams are derived per sample so results do not depend on thread
// scheduling.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53 bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
        return g.next();
    }
};

}  // namespace ifslab
