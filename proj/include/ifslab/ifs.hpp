#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/maps.hpp"

namespace ifslab {

enum class MapKind { similarity, moebius };

// Digits are 0-based indices into the map list. User-facing I/O is 1-based.
using Word = std::vector<int>;

std::string word_str(const Word& w);          // "1.2.1" style, 1-based
Word parse_word(std::string_view text, int digit_count);  // "1,2,1" or "121"

struct Cylinder {
    Word word;
    RatInterval interval;

    Rat diameter() const { return interval.diameter(); }
};

// A finite list of exact 1-D contractions of one kind together with the
// rational hull the maps keep invariant. The attractor is contained in hull;
// for the shipped similarity presets hull equals the convex hull of the
// attractor, so cylinder diameters are exact.
struct Ifs1D {
    MapKind kind = MapKind::similarity;
    std::vector<SimilarityMap> sim;
    std::vector<MoebiusMap> moe;
    RatInterval hull;
    std::string name;
    // set when single maps are not contractions on the hull but fixed
    // compositions are (continued-fraction style systems)
    bool iterated_contraction_only = false;

    int digit_count() const {
        return kind == MapKind::similarity ? static_cast<int>(sim.size())
                                           : static_cast<int>(moe.size());
    }

    RatInterval map_image_of_hull(int digit) const;
    ComposedMap map_at(int digit) const;

    // checks hull invariance, contraction, dets; throws ValidationError
    void validate() const;

    // largest |phi_i'| over the hull, as an exact upper bound
    Rat max_contraction() const;

    static Ifs1D similarity(std::vector<SimilarityMap> maps, RatInterval hull,
                            std::string name = "");
    static Ifs1D moebius(std::vector<MoebiusMap> maps, RatInterval hull, std::string name = "",
                         bool iterated_only = false);

    // cantor3, ex21, ex22, cf12, overlap_demo
    static Ifs1D preset(const std::string& name);
    static std::vector<std::string> preset_names();

    // key-value format; see docs in README
    static Ifs1D from_config(std::istream& in, const std::string& name = "config");
};

// phi_I = phi_{i_1} o ... o phi_{i_n}, exact. Empty words are rejected unless
// allow_empty is set, in which case the identity map is returned.
ComposedMap compose_word(const Ifs1D& ifs, const Word& word, bool allow_empty = false);

Cylinder cylinder_of(const Ifs1D& ifs, const Word& word);

struct PointApprox {
    Rat value;   // midpoint of the depth-cylinder
    Rat error;   // half its diameter
};

// realizes the point with the given coding: approximation from the cylinder
// at `depth` (depth <= coding length)
PointApprox point_of_coding(const Ifs1D& ifs, const Word& coding, int depth);

}  // namespace ifslab
