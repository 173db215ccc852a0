#include "ifslab/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ifslab {

// ---- rational points -----------------------------------------------------------

RationalPoint::RationalPoint(const Rat& q) {
    Rat r = q;
    r.canonicalize();
    num = r.get_num();
    den = r.get_den();
}

RationalPoint::RationalPoint(Int n, Int d) {
    if (d == 0) throw ValidationError("zero denominator");
    Rat q(std::move(n), std::move(d));
    q.canonicalize();
    num = q.get_num();
    den = q.get_den();
}

Int similarity_height_constant(const SimilarityMap& map) {
    Int dr = map.ratio.get_den();
    Int dt = map.translation.get_den();
    return lcm(dr, dt);
}

RationalPoint rational_image(const SimilarityMap& map, const RationalPoint& p) {
    RationalPoint img(map(p.value()));
    Int c = similarity_height_constant(map);
    internal_check(img.height() <= c * p.height(),
                   "height of a rational image exceeded its per-map constant");
    return img;
}

std::vector<HeightOrbitRecord> rational_orbit_growth(const Ifs1D& ifs, const RationalPoint& start,
                                                     int depth, const Budgets& budgets) {
    if (ifs.kind != MapKind::similarity)
        throw ValidationError("rational orbits need a rational similarity system");
    for (const auto& m : ifs.sim)
        (void)m;  // rationality is intrinsic: ratio and translation are exact rationals
    if (depth < 1) throw ValidationError("depth must be >= 1");
    // total words
    std::uint64_t total = 0, level = 1;
    for (int k = 1; k <= depth; ++k) {
        level *= static_cast<std::uint64_t>(ifs.digit_count());
        total += level;
        if (total > budgets.max_words)
            throw ResourceError("orbit word count exceeds the word budget of " +
                                std::to_string(budgets.max_words));
    }

    Int c_max(0);
    for (const auto& m : ifs.sim) c_max = std::max(c_max, similarity_height_constant(m));

    struct Item {
        Word word;
        RationalPoint p;
    };
    std::vector<Item> all;
    all.reserve(total);
    // phi_{i W}(x) = phi_i(phi_W(x)): extend words on the left
    std::vector<Item> frontier{{Word{}, start}};
    for (int k = 1; k <= depth; ++k) {
        std::vector<Item> next;
        next.reserve(frontier.size() * static_cast<std::size_t>(ifs.digit_count()));
        for (const auto& it : frontier) {
            for (int d = 0; d < ifs.digit_count(); ++d) {
                Item child;
                child.word.reserve(it.word.size() + 1);
                child.word.push_back(d);
                child.word.insert(child.word.end(), it.word.begin(), it.word.end());
                child.p = rational_image(ifs.sim[static_cast<std::size_t>(d)], it.p);
                Int bound = int_pow(c_max, static_cast<unsigned long>(k)) * start.height();
                internal_check(child.p.height() <= bound,
                               "orbit height exceeded C^|I| H(start) at word " +
                                   word_str(child.word));
                next.push_back(child);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    std::sort(all.begin(), all.end(), [](const Item& x, const Item& y) {
        if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
        return x.word < y.word;
    });
    std::map<Rat, HeightOrbitRecord> dedup;
    for (const auto& it : all) {
        Rat v = it.p.value();
        auto found = dedup.find(v);
        if (found == dedup.end()) {
            HeightOrbitRecord rec;
            rec.word = it.word;
            rec.value = v;
            rec.height = it.p.height();
            rec.bound =
                int_pow(c_max, static_cast<unsigned long>(it.word.size())) * start.height();
            dedup.emplace(std::move(v), std::move(rec));
        } else {
            found->second.multiplicity += 1;
        }
    }
    std::vector<HeightOrbitRecord> out;
    out.reserve(dedup.size());
    for (auto& [v, rec] : dedup) out.push_back(rec);
    std::sort(out.begin(), out.end(), [](const HeightOrbitRecord& x, const HeightOrbitRecord& y) {
        if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
        return x.word < y.word;
    });
    return out;
}

// ---- quadratic irrationals ------------------------------------------------------

namespace {
constexpr int kQuadPrecisionBits = 128;
}

QuadraticIrrational::QuadraticIrrational(Int a_, Int b_, Int c_, int sign)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), root_sign(sign) {
    if (a == 0) throw ValidationError("leading coefficient must be nonzero");
    Int g = gcd(gcd(abs(a), abs(b)), abs(c));
    if (g > 1) { a /= g; b /= g; c /= g; }
    if (a < 0) { a = -a; b = -b; c = -c; root_sign = -root_sign; }
    Int disc = discriminant();
    if (disc <= 0) throw ValidationError("discriminant must be positive for a real quadratic");
    if (mpz_perfect_square_p(disc.get_mpz_t()))
        throw ValidationError("square discriminant: the polynomial is reducible");
    if (root_sign != 1 && root_sign != -1) throw ValidationError("root selector must be +-1");
}

Int QuadraticIrrational::height() const { return std::max({abs(a), abs(b), abs(c)}); }

mpf_class QuadraticIrrational::root128() const {
    mpf_class disc(0, kQuadPrecisionBits);
    disc = mpf_class(discriminant(), kQuadPrecisionBits);
    mpf_class sq(0, kQuadPrecisionBits);
    sq = sqrt(disc);
    if (root_sign < 0) sq = -sq;
    mpf_class numner(0, kQuadPrecisionBits);
    numner = mpf_class(-b, kQuadPrecisionBits) + sq;
    return numner / (2 * mpf_class(a, kQuadPrecisionBits));
}

double QuadraticIrrational::residual() const {
    mpf_class v = root128();
    mpf_class r = mpf_class(a, kQuadPrecisionBits) * v * v + mpf_class(b, kQuadPrecisionBits) * v +
                  mpf_class(c, kQuadPrecisionBits);
    return std::abs(r.get_d());
}

QuadraticIrrational QuadraticIrrational::sqrt2() {
    return QuadraticIrrational(Int(1), Int(0), Int(-2), +1);
}

QuadraticIrrational QuadraticIrrational::golden_conj() {
    return QuadraticIrrational(Int(1), Int(1), Int(-1), +1);  // (sqrt5 - 1)/2
}

QuadraticIrrational quadratic_image(const QuadraticIrrational& alpha, long digit) {
    if (digit < 1) throw ValidationError("continued-fraction digits are >= 1");
    const Int i(digit);
    // minimal polynomial of 1/(alpha + i), up to content and sign
    Int na = alpha.a * i * i - alpha.b * i + alpha.c;
    Int nb = alpha.b - 2 * i * alpha.a;
    Int nc = alpha.a;
    internal_check(na != 0, "image polynomial degenerated to degree 1");

    // pick the root selector matching 1/(alpha + i)
    mpf_class target(0, kQuadPrecisionBits);
    target = 1 / (alpha.root128() + mpf_class(i, kQuadPrecisionBits));
    QuadraticIrrational plus(na, nb, nc, +1);
    QuadraticIrrational minus(na, nb, nc, -1);
    mpf_class d_plus = abs(plus.root128() - target);
    mpf_class d_minus = abs(minus.root128() - target);
    QuadraticIrrational img = d_plus <= d_minus ? plus : minus;
    internal_check(mpf_class(abs(img.root128() - target)).get_d() < 1e-12,
                   "no root of the image polynomial matches 1/(alpha+i)");
    internal_check(img.height() <= 3 * i * i * alpha.height(),
                   "quadratic image height exceeded 3 i^2 H(alpha)");
    return img;
}

std::vector<QuadOrbitRecord> quadratic_orbit_growth(const std::vector<long>& digits,
                                                    const QuadraticIrrational& start, int depth,
                                                    const Budgets& budgets) {
    if (digits.empty()) throw ValidationError("digit set must be nonempty");
    for (long d : digits)
        if (d < 1) throw ValidationError("digits must be >= 1");
    if (depth < 1) throw ValidationError("depth must be >= 1");
    std::uint64_t total = 0, level = 1;
    for (int k = 1; k <= depth; ++k) {
        level *= digits.size();
        total += level;
        if (total > budgets.max_words)
            throw ResourceError("orbit word count exceeds the word budget");
    }

    Int c_max(0);
    for (long d : digits) c_max = std::max(c_max, Int(3 * d * d));

    struct Item {
        std::vector<long> word;
        QuadraticIrrational alpha;
    };
    std::vector<QuadOrbitRecord> out;
    out.reserve(total);
    std::vector<Item> frontier{{std::vector<long>{}, start}};
    for (int k = 1; k <= depth; ++k) {
        std::vector<Item> next;
        next.reserve(frontier.size() * digits.size());
        for (const auto& it : frontier) {
            for (long d : digits) {
                Item child{std::vector<long>{d}, quadratic_image(it.alpha, d)};
                child.word.insert(child.word.end(), it.word.begin(), it.word.end());
                Int bound = int_pow(c_max, static_cast<unsigned long>(k)) * start.height();
                internal_check(child.alpha.height() <= bound,
                               "orbit height exceeded (max 3 i^2)^|I| H(start)");
                QuadOrbitRecord rec{child.word, child.alpha, bound, child.alpha.residual()};
                out.push_back(rec);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const QuadOrbitRecord& x, const QuadOrbitRecord& y) {
        if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
        return x.word < y.word;
    });
    return out;
}

// ---- tau estimates ----------------------------------------------------------------

TauEstimate approx_exponent_estimate(const Rat& x, const Rat& x_err,
                                     const std::vector<std::pair<Rat, Int>>& points,
                                     std::size_t top_k) {
    if (x_err < 0) throw ValidationError("certified error must be nonnegative");
    TauEstimate est;
    double run = 0;
    for (const auto& [e, h] : points) {
        TauRecord rec;
        rec.point = e;
        rec.height = h;
        Rat dist = rat_abs(x - e);
        if (dist <= x_err) {
            rec.indeterminate = true;
            rec.flag = dist == 0 ? "zero distance" : "distance below certified precision";
        } else if (h <= 1) {
            rec.indeterminate = true;
            rec.flag = "height 1 gives no exponent scale";
        } else {
            double ld = std::log(to_double(dist));
            double lh = std::log(to_double(Rat(h)));
            rec.tau = -ld / lh;
            run = std::max(run, rec.tau);
        }
        est.records.push_back(rec);
        est.running_max.push_back(run);
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < est.records.size(); ++i)
        if (!est.records[i].indeterminate) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return est.records[i].tau > est.records[j].tau;
    });
    if (idx.size() > top_k) idx.resize(top_k);
    est.top_indices = idx;
    return est;
}

// ---- exact overlaps -----------------------------------------------------------------

std::vector<std::pair<Word, Word>> detect_exact_overlap(const Ifs1D& ifs, int k,
                                                        const Budgets& budgets) {
    if (k < 1) throw ValidationError("level must be >= 1");
    checked_level_size(ifs.digit_count(), k, budgets.max_words);
    std::vector<std::pair<Word, Word>> pairs;
    std::unordered_map<std::string, Word> seen;
    detail::walk_level_serial(
        ifs, k, [&](const Word& w, const ComposedMap& m, const RatInterval&) {
            std::string key;
            if (ifs.kind == MapKind::similarity) {
                const auto& s = std::get<SimilarityMap>(m);
                key = rat_str(s.ratio) + "|" + rat_str(s.translation) + "|" +
                      (s.sign > 0 ? "+" : "-");
            } else {
                MoebiusMap mm = std::get<MoebiusMap>(m).canonical();
                key = mm.a.get_str() + "|" + mm.b.get_str() + "|" + mm.c.get_str() + "|" +
                      mm.d.get_str();
            }
            auto [it, inserted] = seen.emplace(std::move(key), w);
            if (!inserted) pairs.emplace_back(it->second, w);
        });
    return pairs;
}

OverlapDrop overlap_dimension_drop(const Ifs1D& ifs, int k, const Word& J, double tol,
                                   const Budgets& budgets) {
    if (ifs.kind != MapKind::similarity)
        throw ValidationError("dimension drop needs a similarity system");
    if (static_cast<int>(J.size()) != k)
        throw ValidationError("J must be a level-" + std::to_string(k) + " word");
    ComposedMap jm = compose_word(ifs, J);
    const auto& jmap = std::get<SimilarityMap>(jm);

    bool duplicated = false;
    std::vector<Rat> reduced_ratios;
    detail::walk_level_serial(ifs, k,
                              [&](const Word& w, const ComposedMap& m, const RatInterval&) {
                                  const auto& s = std::get<SimilarityMap>(m);
                                  if (w != J && s == jmap) duplicated = true;
                                  if (w != J) reduced_ratios.push_back(s.ratio);
                              });
    if (!duplicated)
        throw ValidationError("word " + word_str(J) + " is not duplicated at level " +
                              std::to_string(k));

    std::vector<Rat> full_ratios;
    for (const auto& m : ifs.sim) full_ratios.push_back(m.ratio);

    OverlapDrop drop;
    drop.dim_full = similarity_dimension(full_ratios, tol);
    drop.dim_reduced = similarity_dimension(reduced_ratios, tol);
    internal_check(drop.dim_reduced.upper < drop.dim_full.lower + 2 * tol,
                   "removing a duplicate did not lower the similarity dimension");
    (void)budgets;
    return drop;
}

}  // namespace ifslab
