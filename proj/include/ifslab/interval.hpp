#pragma once

#include <string>

#include "ifslab/rational.hpp"

namespace ifslab {

// Closed interval [lo, hi] with exact rational endpoints.
struct RatInterval {
    Rat lo, hi;

    RatInterval() = default;
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw ValidationError("interval endpoints out of order");
    }

    Rat diameter() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / 2; }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool intersects(const RatInterval& other) const { return lo <= other.hi && other.lo <= hi; }
    // no common point, not even an endpoint
    bool strictly_disjoint(const RatInterval& other) const { return !intersects(other); }
    // interiors disjoint (touching endpoints allowed)
    bool interiors_disjoint(const RatInterval& other) const {
        return hi <= other.lo || other.hi <= lo;
    }

    // 0 when x inside
    Rat distance_to(const Rat& x) const {
        if (x < lo) return lo - x;
        if (x > hi) return x - hi;
        return Rat(0);
    }

    std::string str() const { return "[" + rat_str(lo) + ", " + rat_str(hi) + "]"; }
};

inline RatInterval intersect(const RatInterval& a, const RatInterval& b) {
    Rat lo = a.lo > b.lo ? a.lo : b.lo;
    Rat hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo > hi) throw ValidationError("empty intersection");
    return RatInterval(lo, hi);
}

}  // namespace ifslab
