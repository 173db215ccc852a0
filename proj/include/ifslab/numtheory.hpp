#pragma once

#include <map>

#include "ifslab/dimension.hpp"

namespace ifslab {

// Reduced fraction with the denominator as its height (the 1-D lcm rule).
struct RationalPoint {
    Int num;
    Int den;  // > 0, coprime to num

    RationalPoint() : num(0), den(1) {}
    explicit RationalPoint(const Rat& q);
    RationalPoint(Int n, Int d);

    Rat value() const { return Rat(num) / Rat(den); }
    Int height() const { return den; }
};

// smallest C with H(phi(x)) <= C H(x) for all rationals x:
// lcm(den(ratio), den(translation))
Int similarity_height_constant(const SimilarityMap& map);

// exact image with the per-call height inequality verified
RationalPoint rational_image(const SimilarityMap& map, const RationalPoint& p);

struct HeightOrbitRecord {
    Word word;       // first word reaching the value, in (length, lex) order
    Rat value;
    Int height;
    Int bound;       // C^{|word|} * H(start)
    int multiplicity = 1;
};

// All phi_I(start) for |I| <= depth, deduplicated by value with multiplicity.
// Every word's height is checked against C^{|I|} H(start) before
// deduplication; a violation is a hard failure.
std::vector<HeightOrbitRecord> rational_orbit_growth(const Ifs1D& ifs, const RationalPoint& start,
                                                     int depth, const Budgets& budgets = {});

// Exact degree-2 algebraic number: content-free minimal polynomial
// a x^2 + b x + c with a > 0 and non-square positive discriminant, plus the
// root selector. Numeric root tracked at 128-bit precision.
struct QuadraticIrrational {
    Int a, b, c;
    int root_sign = +1;  // root = (-b + root_sign*sqrt(disc)) / (2a)

    QuadraticIrrational(Int a_, Int b_, Int c_, int sign);

    Int discriminant() const { return b * b - 4 * a * c; }
    Int height() const;
    mpf_class root128() const;
    double root() const { return root128().get_d(); }
    // |a v^2 + b v + c| at the tracked 128-bit root
    double residual() const;

    static QuadraticIrrational sqrt2();          // x^2 - 2, positive root
    static QuadraticIrrational golden_conj();    // x^2 + x - 1, positive root
};

// phi_i(alpha) = 1/(alpha + i) as an exact quadratic irrational; the height
// inequality H(image) <= 3 i^2 H(alpha) is verified per call.
QuadraticIrrational quadratic_image(const QuadraticIrrational& alpha, long digit);

struct QuadOrbitRecord {
    std::vector<long> word;  // continued-fraction digits, phi_{i_1} o ... applied
    QuadraticIrrational alpha;
    Int bound;               // (max_i 3 i^2)^{|word|} * H(start)
    double residual;
};

std::vector<QuadOrbitRecord> quadratic_orbit_growth(const std::vector<long>& digits,
                                                    const QuadraticIrrational& start, int depth,
                                                    const Budgets& budgets = {});

// ---- approximation exponents -------------------------------------------------

struct TauRecord {
    Rat point;
    Int height;
    double tau = 0;
    bool indeterminate = false;
    std::string flag;  // reason when indeterminate
};

struct TauEstimate {
    std::vector<TauRecord> records;      // in input order
    std::vector<double> running_max;     // over determinate records, by input order
    std::vector<std::size_t> top_indices;  // indices of the top-k taus
};

// tau(e) = -log|x - e| / log H(e) per point; pairs with |x-e| at or below the
// certified error of x are flagged indeterminate, as are height-1 points.
TauEstimate approx_exponent_estimate(const Rat& x, const Rat& x_err,
                                     const std::vector<std::pair<Rat, Int>>& points,
                                     std::size_t top_k = 5);

// ---- exact overlaps -----------------------------------------------------------

// All pairs I != J in D^k with phi_I identically equal to phi_J, reported once
// in lexicographic order. Exact and complete for the scanned level. For
// moebius systems (matrix equality up to sign) this is experimental.
std::vector<std::pair<Word, Word>> detect_exact_overlap(const Ifs1D& ifs, int k,
                                                        const Budgets& budgets = {});

struct OverlapDrop {
    DimensionResult dim_full;     // dim_S of the original system
    DimensionResult dim_reduced;  // dim_S of the level-k system minus one copy of J
};

// Removes the duplicate word J from the level-k induced system and solves both
// similarity dimensions; the strict decrease is asserted.
OverlapDrop overlap_dimension_drop(const Ifs1D& ifs, int k, const Word& J, double tol = 1e-10,
                                   const Budgets& budgets = {});

}  // namespace ifslab
