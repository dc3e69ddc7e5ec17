#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rwl/solver.hpp"

namespace rwl {

struct SupNorms {
    double sup_ut;
    double sup_ux;
    // Riemann-variable surrogates max(|R|+|S|)/2 and max(|R|+|S|)/(2 c_star);
    // always upper bounds for the two norms above.
    double bound_ut;
    double bound_ux;
};

SupNorms sup_norms(const FieldState& state, const WaveSpeed& ws);

/// Trapezoidal (= rectangle, periodic) quadrature of u_t^2 + c(u)^2 u_x^2.
/// A conserved quantity of the lambda = 1 flow.
double energy(const FieldState& state, const Grid& grid, const WaveSpeed& ws);

/// Max over the grid of |centered_diff(u) - (R-S)/(2c(u))|; a consistency
/// monitor, not an enforced invariant.
double riemann_consistency(const FieldState& state, const Grid& grid, const WaveSpeed& ws);

/// Least-squares line through 1/sup|u_x| vs t near detection. Heuristic:
/// a Riccati-style blow-up makes the reciprocal vanish linearly, so the
/// line's root estimates the blow-up time.
struct RiccatiFit {
    double t_star;
    double slope;
    double intercept;
    double residual;  // RMS of the linear fit
};

struct BlowUpReport {
    bool detected = false;
    std::optional<double> t_detect;
    std::string quantity;  // "ut" or "ux": the larger norm at detection
    std::vector<std::array<double, 3>> peak_history;  // (t, sup|u_t|, sup|u_x|)
    std::optional<RiccatiFit> growth_fit;
};

/// Scan the trajectory's frames; detected when sup|u_t| + sup|u_x| first
/// exceeds the threshold.
BlowUpReport detect_blowup(const Trajectory& traj, double threshold);

} // namespace rwl
