#pragma once

#include <string>
#include <vector>

#include "ifslab/kernels.hpp"
#include "ifslab/separation.hpp"

namespace ifslab {

struct DimensionResult {
    double lower = 0;
    double upper = 0;
    enum class Method { exact_similarity, pressure_bracket } method = Method::exact_similarity;
    int level = 0;  // n used for pressure brackets, 0 for closed similarity solves
    double tol = 0;

    double midpoint() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    const char* method_name() const {
        return method == Method::exact_similarity ? "exact-similarity" : "pressure-bracket";
    }
};

// Bisection on the strictly decreasing s -> sum r_i^s. Bracket width <= tol on
// return.
DimensionResult similarity_dimension(const std::vector<Rat>& ratios, double tol);

struct PressureBounds {
    double lower = 0;
    double upper = 0;
};

// Finite-n surrogate of the pressure at s: (1/n) log of the level-n derivative
// power sums, with per-cylinder extremes at the hull endpoints. lower == upper
// for similarities.
PressureBounds pressure_bounds(const Ifs1D& ifs, double s, int n, ExecMode mode = ExecMode::parallel,
                               const Budgets& budgets = {});

// Bracket around the Bowen root: [root of lower surrogate, root of upper
// surrogate], each found by bisection to `tol` on s.
DimensionResult bowen_bracket(const Ifs1D& ifs, int n, double tol,
                              ExecMode mode = ExecMode::parallel, const Budgets& budgets = {});

// largest n with |D|^n <= 2^20
int default_bowen_level(const Ifs1D& ifs);

// Per-system dimension summary. dim_H equals the dim_S bracket only under a
// certified separation verdict; otherwise dim_S is an upper bound only.
struct DimensionInfo {
    DimensionResult dim_s;
    bool separation_certified = false;
    Separation separation = Separation::Overlapping;
    double dim_h_lower = 0;
    double dim_h_upper = 0;
    bool equal_ratio = false;

    // value used when a single number is needed as an exponent
    double plugin_value() const {
        return separation_certified ? 0.5 * (dim_h_lower + dim_h_upper) : dim_h_upper;
    }
};

DimensionInfo dimension_info(const Ifs1D& ifs, int level = 0, double tol = 1e-10,
                             ExecMode mode = ExecMode::parallel, const Budgets& budgets = {});

}  // namespace ifslab
