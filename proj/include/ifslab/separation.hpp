#pragma once

#include <optional>
#include <utility>

#include "ifslab/ifs.hpp"

namespace ifslab {

enum class Separation { SSC, OSC, Overlapping };

// Decided from the level-1 hull images. Disjointness of hull images certifies
// SSC/OSC for the attractor; an intersection of hull images does not prove the
// attractor pieces meet, so the Overlapping verdict is marked inconclusive.
struct SeparationResult {
    Separation verdict = Separation::Overlapping;
    bool certified = false;
    // digits (0-based) of an intersecting pair, for Overlapping
    std::optional<std::pair<int, int>> witness_pair;
    std::optional<RatInterval> witness_overlap;
    // a gap between consecutive level-1 images, for SSC
    std::optional<RatInterval> gap;

    const char* verdict_name() const {
        switch (verdict) {
            case Separation::SSC: return "SSC";
            case Separation::OSC: return "OSC";
            default: return "overlapping";
        }
    }
};

SeparationResult check_separation(const Ifs1D& ifs);

}  // namespace ifslab
