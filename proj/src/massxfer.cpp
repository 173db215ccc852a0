#include "ifslab/massxfer.hpp"

#include <cmath>

namespace ifslab {

ScaledBall scale_ball(const Rat& center, double radius, double s, double dim_h) {
    if (!(radius > 0)) throw ValidationError("scale_ball needs a positive radius");
    if (!(dim_h > 0) || !(s > 0)) throw ValidationError("scale_ball needs positive exponents");
    ScaledBall b;
    b.center = center;
    b.radius = radius;
    b.exponent = s;
    b.scaled_radius = std::pow(radius, s / dim_h);
    return b;
}

CriticalScan critical_exponent_scan(const Ifs1D& ifs, double t, int level,
                                    const std::vector<double>& s_grid, ExecMode mode,
                                    const Budgets& budgets) {
    if (t < 1) throw ValidationError("t must be >= 1");
    if (s_grid.size() < 2) throw ValidationError("scan grid needs at least 2 points");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (s_grid[i] <= s_grid[i - 1]) throw ValidationError("scan grid must increase");

    CriticalScan scan;
    scan.s_grid = s_grid;
    scan.level = level;
    scan.grid_step = s_grid[1] - s_grid[0];

    for (double s : s_grid) {
        double rate;
        if (ifs.kind == MapKind::similarity) {
            rate = 0;
            for (const auto& m : ifs.sim) rate += std::pow(to_double(m.ratio), t * s);
        } else {
            double a = diam_power_level_sum(ifs, level, t * s, mode, budgets);
            double b = diam_power_level_sum(ifs, level + 1, t * s, mode, budgets);
            rate = b / a;
        }
        scan.rate.push_back(rate);
    }

    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
        if (scan.rate[i] >= 1.0 && scan.rate[i + 1] < 1.0) {
            scan.bracket = std::make_pair(s_grid[i], s_grid[i + 1]);
            break;
        }
    }
    if (!scan.bracket)
        throw ValidationError("scan grid does not straddle the rate-1 transition");
    return scan;
}

std::vector<double> default_scan_grid(double dim_s, int points) {
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    double lo = 0.05 * dim_s, hi = 1.2 * dim_s;
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return g;
}

}  // namespace ifslab
