#include "ifslab/khintchine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifslab {

// ---- ZPoint -----------------------------------------------------------------

ZPoint ZPoint::fixpoint(int digit0) {
    ZPoint z;
    z.kind = Kind::fixpoint;
    z.digit = digit0;
    return z;
}

ZPoint ZPoint::from_coding(Word w) {
    if (w.empty()) throw ValidationError("z coding must be nonempty");
    ZPoint z;
    z.kind = Kind::coding;
    z.coding = std::move(w);
    return z;
}

ZPoint ZPoint::parse(const std::string& text, int digit_count) {
    const std::string tag = "fixpoint:";
    if (text.rfind(tag, 0) == 0) {
        long d = std::stol(text.substr(tag.size()));
        if (d < 1 || d > digit_count)
            throw ValidationError("fixpoint digit outside 1.." + std::to_string(digit_count));
        return fixpoint(static_cast<int>(d - 1));
    }
    return from_coding(parse_word(text, digit_count));
}

Word ZPoint::coding_prefix(int len) const {
    if (len < 0) throw ValidationError("negative coding length");
    if (kind == Kind::fixpoint) return Word(static_cast<std::size_t>(len), digit);
    if (len > static_cast<int>(coding.size()))
        throw ValidationError("z coding of length " + std::to_string(coding.size()) +
                              " is too short; need " + std::to_string(len) + " digits");
    return Word(coding.begin(), coding.begin() + len);
}

bool ZPoint::has_exact_value(const Ifs1D& ifs) const {
    return kind == Kind::fixpoint && ifs.kind == MapKind::similarity;
}

Rat ZPoint::exact_value(const Ifs1D& ifs) const {
    if (!has_exact_value(ifs)) throw ValidationError("z has no exact rational value");
    return ifs.sim[static_cast<std::size_t>(digit)].fixed_point();
}

PointApprox ZPoint::realize(const Ifs1D& ifs, int depth) const {
    if (has_exact_value(ifs)) return PointApprox{exact_value(ifs), Rat(0)};
    return point_of_coding(ifs, coding_prefix(depth), depth);
}

std::string ZPoint::str() const {
    if (kind == Kind::fixpoint) return "fixpoint:" + std::to_string(digit + 1);
    return word_str(coding);
}

// ---- level sums -------------------------------------------------------------

namespace {

// sum over I in D^n of Diam(X_I)^p; closed form for similarities
double level_diam_power(const Ifs1D& ifs, int n, double p, ExecMode mode, const Budgets& budgets) {
    if (ifs.kind == MapKind::similarity) {
        double base = 0;
        for (const auto& m : ifs.sim) base += std::pow(to_double(m.ratio), p);
        return std::pow(to_double(ifs.hull.diameter()), p) * std::pow(base, n);
    }
    return diam_power_level_sum(ifs, n, p, mode, budgets);
}

bool level_diam_power_feasible(const Ifs1D& ifs, int n, const Budgets& budgets) {
    if (ifs.kind == MapKind::similarity) return true;
    try {
        checked_level_size(ifs.digit_count(), n, budgets.max_words);
        return true;
    } catch (const ResourceError&) {
        return false;
    }
}

double saturating_pow_count(int m, int n) {
    double v = std::pow(static_cast<double>(m), n);
    return v;
}

}  // namespace

DivergenceSums divergence_partial_sums(const Ifs1D& ifs, const ApproxFunction& af, double dim_h,
                                       int n_max, ExecMode mode, const Budgets& budgets) {
    if (n_max < 1) throw ValidationError("need at least one rank");
    if (dim_h <= 0) throw ValidationError("dim_h must be positive");
    DivergenceSums out;
    out.closed_form = ifs.kind == MapKind::similarity;
    out.level_term.reserve(static_cast<std::size_t>(n_max));
    out.partial.reserve(static_cast<std::size_t>(n_max));
    const double p = af.exponent_ratio * dim_h;
    double acc = 0;
    for (int n = 1; n <= n_max; ++n) {
        double term;
        if (af.diameter_bypass) {
            term = saturating_pow_count(ifs.digit_count(), n) * std::pow(af.theta(n), dim_h);
        } else {
            if (!level_diam_power_feasible(ifs, n, budgets))
                throw ResourceError("rank " + std::to_string(n) +
                                    " exceeds the word budget and no closed form applies");
            term = std::pow(af.theta(n), dim_h) * level_diam_power(ifs, n, p, mode, budgets);
        }
        acc += term;
        out.level_term.push_back(term);
        out.partial.push_back(acc);
    }
    return out;
}

// ---- Duffin-Schaeffer ratio ---------------------------------------------------

double DsRatioReport::ratio_at(long q) const {
    for (const auto& [qq, r] : samples)
        if (qq == q) return r;
    throw ValidationError("Q = " + std::to_string(q) + " was not sampled");
}

DsRatioReport dufschaeffer_ratio(const ThetaRule& theta, double dim_h, long q_max) {
    if (dim_h <= 0) throw ValidationError("dim_h must be positive");
    if (q_max < 2) throw ValidationError("q_max must be >= 2");
    DsRatioReport rep;
    double a = 0, b = 0;
    long next_sample = 10;
    for (long n = 1; n <= q_max; ++n) {
        double t = theta(static_cast<int>(n));
        if (t <= 0) throw ValidationError("theta must be positive for the ratio test");
        double td = std::pow(t, dim_h);
        if (t >= 1) {
            rep.clamped = true;  // log(1/theta) would be <= 0; clamp the term at 0
        } else {
            a += td * std::log(1.0 / t);
        }
        b += td;
        if (n >= 2) {
            double ratio = a / (b * b);
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax_q = n;
            }
            if (n == q_max) rep.final_ratio = ratio;
            if (n == next_sample || n == q_max) {
                rep.samples.emplace_back(n, ratio);
                while (next_sample <= n) next_sample *= 10;
            }
        }
    }
    return rep;
}

// ---- target cylinders ----------------------------------------------------------

TargetCylinderResult target_cylinder(const Ifs1D& ifs, const Word& I, const ZPoint& z,
                                     const Rat& theta_value) {
    if (theta_value <= 0) throw ValidationError("theta must be positive at |I|");
    Cylinder base = cylinder_of(ifs, I);
    const Rat threshold = base.diameter() * theta_value;

    double gamma = to_double(ifs.max_contraction());
    int est = theta_value < 1
                  ? static_cast<int>(std::ceil(std::log(to_double(theta_value)) / std::log(gamma))) + 2
                  : 1;

    Word word = I;
    ComposedMap acc = compose_word(ifs, I);
    const int cap = 1 << 14;
    for (int n = 1; n <= cap; ++n) {
        Word zp;
        try {
            zp = z.coding_prefix(n);
        } catch (const ValidationError&) {
            throw ValidationError("z coding exhausted before the diameter threshold; about " +
                                  std::to_string(est) + " digits are needed");
        }
        int d = zp.back();
        acc = std::visit(
            [&](const auto& m) -> ComposedMap {
                using M = std::decay_t<decltype(m)>;
                return m.after(std::get<M>(ifs.map_at(d)));
            },
            acc);
        word.push_back(d);
        RatInterval iv = map_image(acc, ifs.hull);
        if (iv.diameter() < threshold) {
            TargetCylinderResult res;
            res.extra_depth = n;
            res.cylinder = Cylinder{word, iv};

            // certified containment in B(phi_I(z), Diam(X_I) theta): the true
            // center lies in phi_I(z-prefix cylinder)
            int zdepth = std::max(n + 8, est + 8);
            RatInterval zc;
            bool have_zc = true;
            try {
                Word deep = z.coding_prefix(zdepth);
                RatInterval ziv = cylinder_of(ifs, deep).interval;
                zc = map_image(compose_word(ifs, I), ziv);
            } catch (const ValidationError&) {
                have_zc = false;  // short explicit codings: fall back to coarse check
                zc = map_image(compose_word(ifs, I), ifs.hull);
            }
            // definite containment: worst-case center still covers
            bool contained = iv.lo >= zc.hi - threshold && iv.hi <= zc.lo + threshold;
            if (!contained) {
                // definite violation uses the most favourable center
                bool violated = iv.lo < zc.lo - threshold || iv.hi > zc.hi + threshold;
                if (violated)
                    throw InternalCheckError("target cylinder escaped its covering ball");
                if (have_zc)
                    throw PrecisionError(
                        "z coding too short to certify the ball containment; extend it");
                throw PrecisionError("explicit z coding too short for the containment check");
            }
            return res;
        }
    }
    throw ResourceError("target cylinder nesting exceeded the depth cap");
}

// ---- union measure ----------------------------------------------------------

Rat union_measure_1d(std::vector<RatInterval> intervals) {
    if (intervals.empty()) return Rat(0);
    std::sort(intervals.begin(), intervals.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    Rat total(0);
    Rat cur_lo = intervals.front().lo;
    Rat cur_hi = intervals.front().hi;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].lo <= cur_hi) {
            if (intervals[i].hi > cur_hi) cur_hi = intervals[i].hi;
        } else {
            total += cur_hi - cur_lo;
            cur_lo = intervals[i].lo;
            cur_hi = intervals[i].hi;
        }
    }
    total += cur_hi - cur_lo;
    return total;
}

// ---- hit experiment ----------------------------------------------------------

namespace {

struct DescentContext {
    const Ifs1D& ifs;
    const ApproxFunction& af;
    double psi_scale;
    double gamma_max;       // sup |phi'| over the hull, any single map
    double hull_diam;
    bool z_exact = false;
    Rat z_value;            // exact value or deep midpoint
    double z_err = 0;

    double subtree_diam_bound(const ComposedMap& m, int levels_left) const {
        if (ifs.kind == MapKind::similarity) {
            return to_double(std::get<SimilarityMap>(m).ratio) *
                   std::pow(gamma_max, levels_left) * hull_diam;
        }
        const auto& mm = std::get<MoebiusMap>(m);
        double d = std::max(to_double(mm.deriv_abs_at(ifs.hull.lo)),
                            to_double(mm.deriv_abs_at(ifs.hull.hi)));
        return d * std::pow(gamma_max, levels_left) * hull_diam;
    }

    // does x lie in the union of rank-n balls (optionally only the subtree
    // under `prefix`)?
    bool rank_hit(const Rat& x, int rank, const std::optional<Word>& prefix) const {
        ComposedMap start;
        int start_depth = 0;
        if (prefix && !prefix->empty()) {
            if (static_cast<int>(prefix->size()) > rank) return false;
            start = compose_word(ifs, *prefix);
            start_depth = static_cast<int>(prefix->size());
        } else {
            start = ifs.kind == MapKind::similarity ? ComposedMap(SimilarityMap())
                                                    : ComposedMap(MoebiusMap());
        }
        return descend(x, rank, start, start_depth);
    }

    bool descend(const Rat& x, int rank, const ComposedMap& m, int depth) const {
        RatInterval iv = map_image(m, ifs.hull);
        if (depth == rank) {
            double r = af.psi(to_double(iv.diameter()), rank) * psi_scale;
            if (!std::isfinite(r)) throw ValidationError("non-finite ball radius");
            Rat radius(r);  // exact dyadic value of the double
            // midpoint convention when z is only known to z_err
            Rat center = map_apply(m, z_value);
            return rat_abs(x - center) <= radius;
        }
        double bound =
            af.psi(subtree_diam_bound(m, rank - depth - 1), rank) * psi_scale * (1 + 1e-12);
        if (to_double(iv.distance_to(x)) > bound + z_err) return false;
        for (int d = 0; d < ifs.digit_count(); ++d) {
            ComposedMap child = std::visit(
                [&](const auto& mm) -> ComposedMap {
                    using M = std::decay_t<decltype(mm)>;
                    return mm.after(std::get<M>(ifs.map_at(d)));
                },
                m);
            if (descend(x, rank, child, depth + 1)) return true;
        }
        return false;
    }
};

}  // namespace

double HitStatistics::fraction_at_least(int k) const {
    if (n_samples == 0) return 0;
    long c = 0;
    for (int v : per_sample_counts)
        if (v >= k) ++c;
    return static_cast<double>(c) / static_cast<double>(n_samples);
}

std::vector<double> HitStatistics::cumulative_fraction(int k) const {
    std::vector<double> out(ranks.size(), 0.0);
    std::vector<int> running(static_cast<std::size_t>(n_samples), 0);
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        long c = 0;
        for (std::size_t s = 0; s < static_cast<std::size_t>(n_samples); ++s) {
            running[s] += hit[s][j];
            if (running[s] >= k) ++c;
        }
        out[j] = static_cast<double>(c) / static_cast<double>(n_samples);
    }
    return out;
}

double HitStatistics::mean_count() const {
    if (n_samples == 0) return 0;
    double s = 0;
    for (int v : per_sample_counts) s += v;
    return s / static_cast<double>(n_samples);
}

HitStatistics limsup_hit_experiment(const Ifs1D& ifs, const ZPoint& z, const ApproxFunction& af,
                                    const std::vector<int>& ranks, long samples, int k_min,
                                    const NaturalSampler& sampler, double dim_h,
                                    const HitExperimentOptions& options, const Budgets& budgets) {
    if (ranks.empty()) throw ValidationError("no ranks to test");
    if (samples < 1) throw ValidationError("need at least one sample");
    if (k_min < 1) throw ValidationError("k_min must be >= 1");
    for (int n : ranks)
        if (n < 1) throw ValidationError("ranks must be >= 1");

    DescentContext ctx{ifs, af, options.psi_scale, to_double(ifs.max_contraction()),
                       to_double(ifs.hull.diameter())};

    // smallest radius over the tested ranks, as a lower bound
    double min_ratio;
    if (ifs.kind == MapKind::similarity) {
        min_ratio = 2.0;
        for (const auto& m : ifs.sim) min_ratio = std::min(min_ratio, to_double(m.ratio));
    } else {
        min_ratio = 2.0;
        for (const auto& m : ifs.moe)
            min_ratio = std::min(min_ratio, std::min(to_double(m.deriv_abs_at(ifs.hull.lo)),
                                                     to_double(m.deriv_abs_at(ifs.hull.hi))));
    }
    double r_min = std::numeric_limits<double>::infinity();
    int max_rank = 0;
    for (int n : ranks) {
        double dmin = std::pow(min_ratio, n) * ctx.hull_diam;
        r_min = std::min(r_min, af.psi(dmin, n) * options.psi_scale);
        max_rank = std::max(max_rank, n);
    }
    if (!(r_min > 0)) throw ValidationError("some tested rank has zero radius");

    const double target = options.center_precision_factor * r_min;
    auto depth_for = [&](double width_needed) {
        double L = std::log(width_needed / ctx.hull_diam) / std::log(ctx.gamma_max);
        return static_cast<int>(std::ceil(std::max(1.0, L))) + 2;
    };

    // dyadic precision that keeps rounding far below the smallest radius
    const unsigned long round_bits = static_cast<unsigned long>(
        std::max(16.0, std::ceil(-std::log2(target)) + 4.0));

    // realize z
    if (z.has_exact_value(ifs)) {
        ctx.z_exact = true;
        ctx.z_value = z.exact_value(ifs);
        ctx.z_err = 0;
    } else {
        int zdepth = depth_for(target);
        if (zdepth > budgets.max_coding_depth)
            throw PrecisionError("ball radii below point-approximation error at the coding-depth "
                                 "budget; a z coding deeper than " +
                                 std::to_string(budgets.max_coding_depth) + " digits is needed");
        PointApprox pa = z.realize(ifs, zdepth);
        ctx.z_value = dyadic_round(pa.value, round_bits);
        ctx.z_err = to_double(pa.error) + std::pow(0.5, static_cast<double>(round_bits));
    }

    const int sample_depth = depth_for(target);
    if (sample_depth > budgets.max_coding_depth)
        throw PrecisionError(
            "ball radii below point-approximation error at the coding-depth budget; "
            "samples would need " +
            std::to_string(sample_depth) + " digits");

    HitStatistics st;
    st.ranks = ranks;
    st.n_samples = samples;
    st.k_min = k_min;
    st.sample_depth = sample_depth;
    st.hit.assign(static_cast<std::size_t>(samples),
                  std::vector<std::uint8_t>(ranks.size(), 0));
    st.per_sample_counts.assign(static_cast<std::size_t>(samples), 0);

    const bool parallel = options.mode == ExecMode::parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long s = 0; s < samples; ++s) {
        Word coding;
        if (options.sample_prefix) coding = *options.sample_prefix;
        Word tail = sampler.sample_coding(sample_depth, static_cast<std::uint64_t>(s));
        coding.insert(coding.end(), tail.begin(), tail.end());
        PointApprox x = point_of_coding(ifs, coding, static_cast<int>(coding.size()));
        Rat xv = dyadic_round(x.value, round_bits);
        int count = 0;
        for (std::size_t j = 0; j < ranks.size(); ++j) {
            bool h = ctx.rank_hit(xv, ranks[j], options.restrict_prefix);
            st.hit[static_cast<std::size_t>(s)][j] = h ? 1 : 0;
            if (h) ++count;
            if (options.early_stop_k > 0 && count >= options.early_stop_k) break;
        }
        st.per_sample_counts[static_cast<std::size_t>(s)] = count;
    }

    // per-rank series
    const double p = af.exponent_ratio * dim_h;
    double acc = 0;
    for (int n : ranks) {
        double term;
        if (af.diameter_bypass) {
            term = saturating_pow_count(ifs.digit_count(), n) * std::pow(af.theta(n), dim_h);
        } else if (level_diam_power_feasible(ifs, n, budgets)) {
            term = std::pow(af.theta(n), dim_h) *
                   level_diam_power(ifs, n, p, options.mode, budgets);
        } else {
            term = std::numeric_limits<double>::quiet_NaN();
        }
        st.sum_term.push_back(term);
        acc += term;
        st.partial_sum.push_back(acc);
        std::uint64_t balls = 1;
        bool sat = false;
        int eff = options.restrict_prefix ? n - static_cast<int>(options.restrict_prefix->size())
                                          : n;
        for (int i = 0; i < std::max(eff, 0); ++i) {
            if (balls > (std::uint64_t(-1) / static_cast<std::uint64_t>(ifs.digit_count()))) {
                sat = true;
                break;
            }
            balls *= static_cast<std::uint64_t>(ifs.digit_count());
        }
        st.balls_per_rank.push_back(sat ? std::uint64_t(-1) : balls);

        // exact covered measure for small ranks
        std::optional<Rat> cov;
        try {
            std::uint64_t words = checked_level_size(ifs.digit_count(), n, options.cover_cap_words);
            (void)words;
            std::vector<RatInterval> balls_iv;
            LevelEnumerator en(ifs, n, budgets);
            while (auto c = en.next()) {
                if (options.restrict_prefix) {
                    const Word& pre = *options.restrict_prefix;
                    if (c->word.size() < pre.size() ||
                        !std::equal(pre.begin(), pre.end(), c->word.begin()))
                        continue;
                }
                double r = af.psi(to_double(c->diameter()), n) * options.psi_scale;
                Rat radius(r);
                Rat center = map_apply(compose_word(ifs, c->word), ctx.z_value);
                Rat lo = center - radius, hi = center + radius;
                if (lo < ifs.hull.lo) lo = ifs.hull.lo;
                if (hi > ifs.hull.hi) hi = ifs.hull.hi;
                if (lo <= hi) balls_iv.emplace_back(lo, hi);
            }
            cov = union_measure_1d(std::move(balls_iv));
        } catch (const ResourceError&) {
            cov = std::nullopt;
        }
        st.covered_measure.push_back(std::move(cov));
    }
    return st;
}

// ---- cover sums ----------------------------------------------------------------

CoverSum convergence_cover_sum(const Ifs1D& ifs, const ApproxFunction& af, double s, int m_first,
                               int n_last, ExecMode mode, const Budgets& budgets) {
    if (m_first < 1 || n_last < m_first) throw ValidationError("need 1 <= M <= N");
    if (s <= 0) throw ValidationError("cover exponent must be positive");
    CoverSum out;
    const double p = af.exponent_ratio * s;
    for (int n = m_first; n <= n_last; ++n) {
        double level;
        if (af.diameter_bypass) {
            level = saturating_pow_count(ifs.digit_count(), n) *
                    std::pow(2.0 * af.theta(n), s);
        } else {
            if (!level_diam_power_feasible(ifs, n, budgets))
                throw ResourceError("cover sum rank " + std::to_string(n) +
                                    " exceeds the word budget");
            level = std::pow(2.0 * af.theta(n), s) * level_diam_power(ifs, n, p, mode, budgets);
        }
        out.value += level;
    }
    // geometric tail bound for similarity systems with monotone theta: the
    // per-level term is (2 theta(n))^s * D^p * base^n
    if (ifs.kind == MapKind::similarity && !af.diameter_bypass &&
        af.theta.monotone_decreasing()) {
        double base = 0;
        for (const auto& m : ifs.sim) base += std::pow(to_double(m.ratio), p);
        double hd = std::pow(to_double(ifs.hull.diameter()), p);
        if (af.theta.family == ThetaRule::Family::exponential) {
            // theta contributes its own geometric factor
            double q = std::pow(af.theta.base, s) * base;
            if (q < 1) {
                double first = std::pow(2.0 * af.theta(n_last + 1), s) * hd *
                               std::pow(base, n_last + 1);
                out.tail_bound = first / (1 - q);
            }
        } else if (base < 1) {
            double first = std::pow(2.0 * af.theta(n_last + 1), s) * hd *
                           std::pow(base, n_last + 1);
            out.tail_bound = first / (1 - base);
        }
    }
    return out;
}

}  // namespace ifslab
