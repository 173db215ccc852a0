#include "ifslab/separation.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ifslab {

SeparationResult check_separation(const Ifs1D& ifs) {
    const int m = ifs.digit_count();
    std::vector<RatInterval> img;
    img.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) img.push_back(ifs.map_image_of_hull(i));

    // any interior overlap decides "overlapping" immediately
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (!img[static_cast<std::size_t>(i)].interiors_disjoint(
                    img[static_cast<std::size_t>(j)])) {
                SeparationResult r;
                r.verdict = Separation::Overlapping;
                r.certified = false;  // hull images may overrun the attractor
                r.witness_pair = {i, j};
                r.witness_overlap = intersect(img[static_cast<std::size_t>(i)],
                                              img[static_cast<std::size_t>(j)]);
                return r;
            }
        }
    }

    // interiors pairwise disjoint; sort by left endpoint, look for touching
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return img[static_cast<std::size_t>(x)].lo < img[static_cast<std::size_t>(y)].lo;
    });
    bool touching = false;
    std::optional<RatInterval> gap;
    for (int k = 0; k + 1 < m; ++k) {
        const auto& a = img[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        const auto& b = img[static_cast<std::size_t>(order[static_cast<std::size_t>(k + 1)])];
        if (a.hi == b.lo) {
            touching = true;
        } else if (!gap) {
            gap = RatInterval(a.hi, b.lo);
        }
    }

    SeparationResult r;
    r.certified = true;
    if (touching) {
        r.verdict = Separation::OSC;
    } else {
        r.verdict = Separation::SSC;
        r.gap = gap;
    }
    return r;
}

}  // namespace ifslab
