#pragma once

#include <variant>

#include "ifslab/interval.hpp"
#include "ifslab/rational.hpp"

namespace ifslab {

// x -> sign * ratio * x + translation, with 0 < ratio < 1 for IFS members.
// Compositions may have any ratio in (0,1]; identity is ratio 1.
struct SimilarityMap {
    Rat ratio;
    Rat translation;
    int sign = +1;

    SimilarityMap() : ratio(1), translation(0), sign(+1) {}
    SimilarityMap(Rat r, Rat t, int s = +1)
        : ratio(std::move(r)), translation(std::move(t)), sign(s) {
        if (ratio <= 0) throw ValidationError("similarity ratio must be positive");
        if (sign != 1 && sign != -1) throw ValidationError("similarity sign must be +-1");
    }

    Rat operator()(const Rat& x) const {
        Rat y = ratio * x;
        if (sign < 0) y = -y;
        return y + translation;
    }

    RatInterval image(const RatInterval& iv) const {
        Rat a = (*this)(iv.lo), b = (*this)(iv.hi);
        return sign > 0 ? RatInterval(a, b) : RatInterval(b, a);
    }

    Rat deriv_abs() const { return ratio; }

    // (*this) o inner
    SimilarityMap after(const SimilarityMap& inner) const {
        Rat t = ratio * inner.translation;
        if (sign < 0) t = -t;
        return SimilarityMap(ratio * inner.ratio, t + translation, sign * inner.sign);
    }

    // solves phi(x) = x
    Rat fixed_point() const {
        Rat slope = ratio;
        if (sign < 0) slope = -slope;
        if (slope == 1) throw ValidationError("identity map has no unique fixed point");
        return translation / (1 - slope);
    }

    bool operator==(const SimilarityMap& o) const {
        return sign == o.sign && ratio == o.ratio && translation == o.translation;
    }
};

// x -> (a x + b)/(c x + d) with integer entries, |ad - bc| = 1.
// Composition is the 2x2 integer matrix product.
struct MoebiusMap {
    Int a, b, c, d;

    MoebiusMap() : a(1), b(0), c(0), d(1) {}
    MoebiusMap(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (det() == 0) throw ValidationError("singular moebius matrix");
    }

    Int det() const { return a * d - b * c; }

    bool pole_in(const RatInterval& iv) const {
        if (c == 0) return false;
        Rat pole = Rat(-d) / Rat(c);
        pole.canonicalize();
        return iv.contains(pole);
    }

    Rat operator()(const Rat& x) const {
        Rat den = Rat(c) * x + Rat(d);
        if (den == 0) throw ValidationError("moebius map evaluated at its pole");
        Rat y = (Rat(a) * x + Rat(b)) / den;
        y.canonicalize();
        return y;
    }

    // valid on pole-free intervals: the map is monotone there, so endpoint
    // images bound the image exactly
    RatInterval image(const RatInterval& iv) const {
        if (pole_in(iv)) throw ValidationError("moebius image across a pole");
        Rat lo = (*this)(iv.lo), hi = (*this)(iv.hi);
        return lo <= hi ? RatInterval(lo, hi) : RatInterval(hi, lo);
    }

    // |phi'(x)| = |det| / (c x + d)^2
    Rat deriv_abs_at(const Rat& x) const {
        Rat den = Rat(c) * x + Rat(d);
        if (den == 0) throw ValidationError("moebius derivative at pole");
        Rat dd = den * den;
        Rat r = rat_abs(Rat(det())) / dd;
        r.canonicalize();
        return r;
    }

    MoebiusMap after(const MoebiusMap& m) const {
        return MoebiusMap(a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c,
                          c * m.b + d * m.d);
    }

    // Matrices M and -M give the same map: normalize so the first nonzero of
    // (a,b,c,d) is positive. Entries of a det +-1 product are already content-free.
    MoebiusMap canonical() const {
        MoebiusMap m = *this;
        Int g = gcd(gcd(abs(m.a), abs(m.b)), gcd(abs(m.c), abs(m.d)));
        if (g > 1) { m.a /= g; m.b /= g; m.c /= g; m.d /= g; }
        int flip = 0;
        for (const Int* e : {&m.a, &m.b, &m.c, &m.d}) {
            if (*e != 0) { flip = (*e < 0) ? -1 : 1; break; }
        }
        if (flip < 0) { m.a = -m.a; m.b = -m.b; m.c = -m.c; m.d = -m.d; }
        return m;
    }

    bool same_map(const MoebiusMap& o) const {
        MoebiusMap x = canonical(), y = o.canonical();
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

using ComposedMap = std::variant<SimilarityMap, MoebiusMap>;

inline Rat map_apply(const ComposedMap& m, const Rat& x) {
    return std::visit([&](const auto& f) { return f(x); }, m);
}

inline RatInterval map_image(const ComposedMap& m, const RatInterval& iv) {
    return std::visit([&](const auto& f) { return f.image(iv); }, m);
}

}  // namespace ifslab
