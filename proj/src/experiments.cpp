#include "ifslab/experiments.hpp"

#include <cmath>

namespace ifslab {

Int sigma_count(int m, int num, int den) {
    if (m < 1) throw ValidationError("m must be >= 1");
    if (num < 1 || den < 1 || num > den) throw ValidationError("threshold must be a ratio in (0,1]");
    // ceil(m*num/den)
    long k0 = (static_cast<long>(m) * num + den - 1) / den;
    Int total = 0;
    Int binom;
    for (long k = k0; k <= m; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m),
                     static_cast<unsigned long>(k));
        total += binom;
    }
    return total;
}

Int sigma_count_bruteforce(int m, int num, int den) {
    if (m > 30) throw ValidationError("brute force capped at m = 30");
    long k0 = (static_cast<long>(m) * num + den - 1) / den;
    long count = 0;
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << m); ++w) {
        if (static_cast<long>(__builtin_popcountll(w)) >= k0) ++count;
    }
    return Int(count);
}

HoeffdingBound hoeffding_bound(int m) {
    if (m < 1) throw ValidationError("m must be >= 1");
    HoeffdingBound b;
    b.t = 1.0 / 8.0;
    b.exponent = -2.0 * m * b.t * b.t;  // = -m/32
    b.value = std::exp(m * (std::log(2.0) + b.exponent / m));
    return b;
}

bool sigma_count_below_hoeffding(int m) {
    Int c = sigma_count(m);
    long exp2;
    double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
    double log2_count = std::log2(mant) + static_cast<double>(exp2);
    double log2_bound = m * (1.0 - 1.0 / (32.0 * std::log(2.0)));
    return log2_count <= log2_bound;
}

Example21Tail example21_tail(int n_first, int enum_bound) {
    if (n_first < 1) throw ValidationError("tail start must be >= 1");
    Example21Tail t;
    t.enum_bound = enum_bound;
    const double q = std::exp(-1.0 / 32.0);
    t.geometric = 4.0 * std::pow(q, n_first) / (1.0 - q);
    double sharp = 0.0;
    int geo_from = n_first;
    if (n_first <= enum_bound) {
        for (int m = n_first; m <= enum_bound; ++m) {
            Rat p(sigma_count(m));
            Rat d;
            mpz_ui_pow_ui(mpq_denref(d.get_mpq_t()), 2, static_cast<unsigned long>(m));
            mpz_set_ui(mpq_numref(d.get_mpq_t()), 1);
            sharp += 4.0 * to_double(Rat(p * d));
        }
        geo_from = enum_bound + 1;
    }
    sharp += 4.0 * std::pow(q, geo_from) / (1.0 - q);
    t.sharp = sharp;
    return t;
}

WindowReport example21_montecarlo(const std::vector<int>& window_starts, int window_len,
                                  long samples, int k, std::uint64_t seed,
                                  std::optional<double> contrast_c, ExecMode mode) {
    if (window_len < 1) throw ValidationError("window length must be >= 1");
    Ifs1D ifs = Ifs1D::preset("ex21");
    // the (3/4, 1/4) push-forward is Lebesgue measure on [0,1]
    NaturalSampler sampler = NaturalSampler::from_digit_weights({0.75, 0.25}, seed);
    ApproxFunction af;
    if (contrast_c) {
        af.theta = ThetaRule::constant(*contrast_c);
        af.diameter_bypass = false;
    } else {
        af.theta = ThetaRule::exponential(1.0, 0.5);  // radius 2^{-m}, rank only
        af.diameter_bypass = true;
    }

    WindowReport rep;
    rep.window_start = window_starts;
    rep.window_len = window_len;
    rep.k = k;
    rep.samples = samples;
    ZPoint z = ZPoint::fixpoint(0);
    HitExperimentOptions opt;
    opt.seed = seed;
    opt.mode = mode;
    opt.cover_cap_words = 0;  // covered measure not needed here
    opt.early_stop_k = k;
    for (int M : window_starts) {
        std::vector<int> ranks(static_cast<std::size_t>(window_len));
        for (int i = 0; i < window_len; ++i) ranks[static_cast<std::size_t>(i)] = M + i;
        HitStatistics st =
            limsup_hit_experiment(ifs, z, af, ranks, samples, k, sampler, 1.0, opt);
        double f = st.fraction_at_least(k);
        rep.hitter_fraction.push_back(f);
        rep.sigma_bound =
            std::max(rep.sigma_bound, std::sqrt(std::max(f * (1 - f), 0.25 / samples) /
                                                static_cast<double>(samples)));
    }
    return rep;
}

Rat Example22Report::eq11_tail_bound_at(long n) const {
    // sum_{m>n} m^{-2} < 1/n, so the eq11 tail past n is below 2^{-|J|}/n
    Rat bound(1, n);
    Rat scale;
    mpz_ui_pow_ui(mpq_denref(scale.get_mpq_t()), 2, static_cast<unsigned long>(j_len));
    mpz_set_ui(mpq_numref(scale.get_mpq_t()), 1);
    return bound * scale;
}

Example22Report example22_check(const Word& J, int exact_ranks, long samples, std::uint64_t seed,
                                int window_start, int window_len, int k, ExecMode mode) {
    if (J.empty()) throw ValidationError("J must be nonempty");
    for (int d : J)
        if (d < 0 || d > 1) throw ValidationError("J must be a word over the two digits");
    Ifs1D ifs = Ifs1D::preset("ex22");
    Example22Report rep;
    rep.j_len = static_cast<int>(J.size());
    rep.exact_ranks = exact_ranks;
    rep.window_start = window_start;
    rep.window_len = window_len;
    rep.samples = samples;

    // Psi(I) = 2^{-n} n^{-2} on the J-subtree, 2^{-n} elsewhere.
    // eq11 partials: sum over I beginning with J of Psi(I)  (from n = |J|)
    // eq12 partials: sum over all I of Psi(I)               (from n = 1)
    const int j = rep.j_len;
    Rat pow2_negj;
    mpz_ui_pow_ui(mpq_denref(pow2_negj.get_mpq_t()), 2, static_cast<unsigned long>(j));
    mpz_set_ui(mpq_numref(pow2_negj.get_mpq_t()), 1);

    Rat acc11(0), acc12(0);
    for (int n = 1; n <= exact_ranks; ++n) {
        Rat inv_n2(1);
        mpz_set_ui(mpq_numref(inv_n2.get_mpq_t()), 1);
        mpz_ui_pow_ui(mpq_denref(inv_n2.get_mpq_t()), static_cast<unsigned long>(n), 2);
        if (n >= j) {
            // 2^{n-j} words beginning with J, each Psi = 2^{-n} n^{-2}
            acc11 += pow2_negj * inv_n2;
            rep.eq11_partial.push_back(acc11);
            acc12 += (Rat(1) - pow2_negj) + pow2_negj * inv_n2;
        } else {
            acc12 += Rat(1);  // all 2^n words carry 2^{-n}
        }
        rep.eq12_partial.push_back(acc12);
    }

    if (samples > 0) {
        ApproxFunction af;
        ThetaRule custom;
        custom.family = ThetaRule::Family::custom;
        custom.custom = [](int n) {
            return std::pow(0.5, n) / (static_cast<double>(n) * static_cast<double>(n));
        };
        custom.spec_text = "2^-n*n^-2";
        af.theta = custom;
        af.diameter_bypass = true;

        NaturalSampler sampler = NaturalSampler::from_digit_weights({0.5, 0.5}, seed);
        HitExperimentOptions opt;
        opt.seed = seed;
        opt.mode = mode;
        opt.cover_cap_words = 0;
        opt.early_stop_k = k;
        opt.restrict_prefix = J;   // only beginning-with-J balls
        opt.sample_prefix = J;     // samples conditioned on X_J
        std::vector<int> ranks(static_cast<std::size_t>(window_len));
        for (int i = 0; i < window_len; ++i) ranks[static_cast<std::size_t>(i)] = window_start + i;
        ZPoint z = ZPoint::fixpoint(0);
        HitStatistics st =
            limsup_hit_experiment(ifs, z, af, ranks, samples, k, sampler, 1.0, opt);
        rep.window_fraction = st.fraction_at_least(k);
    }
    return rep;
}

BlockScan leading_block_scan(const Word& coding, int l) {
    if (l < 1 || l > static_cast<int>(coding.size()))
        throw ValidationError("prefix length must be in 1..|coding|");
    BlockScan scan;
    scan.prefix_len = l;
    scan.coding_len = static_cast<int>(coding.size());
    for (int p = 0; p + l <= static_cast<int>(coding.size()); ++p) {
        bool match = true;
        for (int i = 0; i < l; ++i) {
            if (coding[static_cast<std::size_t>(p + i)] != coding[static_cast<std::size_t>(i)]) {
                match = false;
                break;
            }
        }
        if (match) scan.positions.push_back(p);
    }
    scan.certified = scan.positions.size() == 1;
    return scan;
}

}  // namespace ifslab
