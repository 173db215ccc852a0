#pragma once

#include "ifslab/khintchine.hpp"

namespace ifslab {

struct ScaledBall {
    Rat center;
    double radius = 0;
    double exponent = 0;
    double scaled_radius = 0;  // radius^{exponent/dim_h}
};

// B -> B^s rescaling: radius r becomes r^{s/dim_h}
ScaledBall scale_ball(const Rat& center, double radius, double s, double dim_h);

struct CriticalScan {
    std::vector<double> s_grid;
    std::vector<double> rate;  // per-rank geometric rate of the cover sums at s
    // adjacent grid pair where the rate crosses 1
    std::optional<std::pair<double, double>> bracket;
    double grid_step = 0;
    int level = 0;
};

// Scans s over the grid and reports the per-rank growth rate of
// sum_I (2 Diam(X_I)^t)^s; the transition rate==1 brackets the critical cover
// exponent, expected at dim_h/t. The rate is exact for similarities
// (sum_i r_i^{t s}) and estimated from consecutive level sums otherwise.
CriticalScan critical_exponent_scan(const Ifs1D& ifs, double t, int level,
                                    const std::vector<double>& s_grid,
                                    ExecMode mode = ExecMode::parallel,
                                    const Budgets& budgets = {});

// 64 points spanning [0.05, 1.2] * dim_s
std::vector<double> default_scan_grid(double dim_s, int points = 64);

}  // namespace ifslab
