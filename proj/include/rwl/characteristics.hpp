#pragma once

#include <cstdint>
#include <vector>

#include "rwl/solver.hpp"

namespace rwl {

enum class CharDirection { Plus, Minus };

/// A sampled characteristic curve X(tau) with dX/dtau = +-c(u), traced
/// backward from its anchor to tau = 0. Samples are stored in ascending tau;
/// the last sample is the anchor. The value is S/sqrt(c) on Plus curves and
/// R/sqrt(c) on Minus curves.
struct CharacteristicCurve {
    CharDirection direction;
    double anchor_t;
    double anchor_x;
    struct Sample {
        double tau;
        double x;
        double value;
    };
    std::vector<Sample> samples;
};

/// Trace backward from (t, x) through the stored frames with Heun steps
/// matched to frame times; u interpolated bilinearly in (tau, x). Throws
/// CurveLeftDomain if the unwrapped position exits [x_min, x_max].
CharacteristicCurve trace(const Trajectory& traj, double anchor_t, double anchor_x,
                          CharDirection direction);

struct MonotonicityReport {
    double max_increase_rate = 0.0;  // largest forward difference per unit tau
    double tol_rate = 0.0;
    bool pass = false;
    bool applicable = true;  // the decay claim is only certified for lambda = 0
};

/// Rate tolerance kappa*(dx + median dt) for monotonicity checks.
double monotonicity_tolerance(const Trajectory& traj, double kappa);

/// Bilinear interpolation between frames wants spacing <= 10 steps; returns
/// a warning message when the trajectory was stored more coarsely.
std::optional<std::string> frame_spacing_warning(const Trajectory& traj);

/// Check that the weighted value is nonincreasing in tau up to tol_rate.
MonotonicityReport weighted_monotonicity_report(const CharacteristicCurve& curve,
                                                double tol_rate, bool lambda_is_zero = true);

/// Anchors sampled uniformly with t in (0, t_max] and x inside the window
/// that keeps a backward characteristic within the domain (|dX/dtau| <= c_sup).
std::vector<std::pair<double, double>> random_anchors(const Trajectory& traj, int count,
                                                      std::uint64_t seed);

} // namespace rwl
