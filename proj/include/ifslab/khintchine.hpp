#pragma once

#include <optional>

#include "ifslab/approx.hpp"
#include "ifslab/dimension.hpp"
#include "ifslab/sampler.hpp"

namespace ifslab {

// The anchor point z of the target balls B(phi_I(z), Psi(I)), given either as
// the fixed point of one map or as an explicit coding.
struct ZPoint {
    enum class Kind { fixpoint, coding } kind = Kind::fixpoint;
    int digit = 0;  // 0-based
    Word coding;

    static ZPoint fixpoint(int digit0);
    static ZPoint from_coding(Word w);
    // "fixpoint:1" (1-based digit) or a word literal like "1,2,1" / "121"
    static ZPoint parse(const std::string& text, int digit_count);

    Word coding_prefix(int len) const;
    bool has_exact_value(const Ifs1D& ifs) const;
    Rat exact_value(const Ifs1D& ifs) const;
    PointApprox realize(const Ifs1D& ifs, int depth) const;
    std::string str() const;
};

// ---- divergence sums -------------------------------------------------------

struct DivergenceSums {
    std::vector<double> level_term;   // T_n, n = 1..N
    std::vector<double> partial;      // S_n
    bool closed_form = false;         // similarity closed form used
};

// S_n of the rank sums sum_I (Diam(X_I)^{ratio} theta(m))^{dim}. For
// similarity systems the inner sum has the closed form
// Diam(hull)^{p} (sum_i r_i^{p})^{m}, so N may be large; moebius systems
// enumerate and are budget-capped.
DivergenceSums divergence_partial_sums(const Ifs1D& ifs, const ApproxFunction& af, double dim_h,
                                       int n_max, ExecMode mode = ExecMode::parallel,
                                       const Budgets& budgets = {});

// ---- Duffin-Schaeffer style ratio -----------------------------------------

struct DsRatioReport {
    double max_ratio = 0;
    long argmax_q = 0;
    double final_ratio = 0;
    bool clamped = false;  // some theta(n) >= 1 had its log term clamped to 0
    std::vector<std::pair<long, double>> samples;  // (Q, ratio) on a sparse grid
    double ratio_at(long q) const;
};

// A_Q / B_Q with A_Q = sum theta(n)^dim log(1/theta(n)), B_Q = (sum theta^dim)^2.
DsRatioReport dufschaeffer_ratio(const ThetaRule& theta, double dim_h, long q_max);

// ---- nested target cylinders ----------------------------------------------

struct TargetCylinderResult {
    int extra_depth = 0;  // the minimal N
    Cylinder cylinder;    // X_{I(z_1..z_N)}
};

// Smallest N with Diam(X_{I(z_1..z_N)}) < Diam(X_I) * theta (strict), plus the
// certified containment X_{I,theta} inside B(phi_I(z), Diam(X_I) theta).
TargetCylinderResult target_cylinder(const Ifs1D& ifs, const Word& I, const ZPoint& z,
                                     const Rat& theta_value);

// ---- exact union measure ----------------------------------------------------

Rat union_measure_1d(std::vector<RatInterval> intervals);

// ---- limsup hit experiment --------------------------------------------------

struct HitExperimentOptions {
    std::uint64_t seed = 1;
    ExecMode mode = ExecMode::parallel;
    std::uint64_t cover_cap_words = std::uint64_t(1) << 14;
    double center_precision_factor = 1e-3;
    double psi_scale = 1.0;              // radii multiplied by this factor
    std::optional<Word> restrict_prefix; // only balls whose word starts with it
    std::optional<Word> sample_prefix;   // sample codings conditioned on this prefix
    // stop testing a sample once it has this many hits (0 = test every rank);
    // cumulative per-rank fractions are not meaningful under early stop
    int early_stop_k = 0;
};

struct HitStatistics {
    std::vector<int> ranks;
    long n_samples = 0;
    int k_min = 1;
    // hit[s][j] = 1 when sample s lies in the rank ranks[j] ball union
    std::vector<std::vector<std::uint8_t>> hit;
    std::vector<int> per_sample_counts;
    std::vector<double> sum_term;                    // per rank (Eq-style level term)
    std::vector<double> partial_sum;
    std::vector<std::uint64_t> balls_per_rank;
    std::vector<std::optional<Rat>> covered_measure; // exact, ranks within cover cap
    int sample_depth = 0;

    double fraction_at_least(int k) const;
    // fraction of samples with >= k hits among the first j+1 ranks
    std::vector<double> cumulative_fraction(int k) const;
    double mean_count() const;
};

// Finite-rank surrogate for limsup membership: a sample is a k-hitter when it
// lies in the rank-n ball union for at least k of the tested ranks.
HitStatistics limsup_hit_experiment(const Ifs1D& ifs, const ZPoint& z, const ApproxFunction& af,
                                    const std::vector<int>& ranks, long samples, int k_min,
                                    const NaturalSampler& sampler, double dim_h,
                                    const HitExperimentOptions& options = {},
                                    const Budgets& budgets = {});

// ---- convergence-side cover sums -------------------------------------------

struct CoverSum {
    double value = 0;                    // sum_{n=M..N} sum_I (2 Psi(I))^s
    std::optional<double> tail_bound;    // geometric bound past N (similarities)
};

CoverSum convergence_cover_sum(const Ifs1D& ifs, const ApproxFunction& af, double s, int m_first,
                               int n_last, ExecMode mode = ExecMode::parallel,
                               const Budgets& budgets = {});

}  // namespace ifslab
