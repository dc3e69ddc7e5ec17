#pragma once

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "rwl/grid.hpp"
#include "rwl/wavespeed.hpp"

namespace rwl {

/// Initial displacement and velocity sampled on a grid, with the spatial
/// derivative of u0 carried analytically when the generator provides one.
/// u0 and u1 vanish (to 1e-12) outside [support_lo, support_hi].
struct InitialData {
    Eigen::ArrayXd x;
    Eigen::ArrayXd u0;
    Eigen::ArrayXd u1;
    Eigen::ArrayXd u0_prime;
    double support_lo = 0.0;
    double support_hi = 0.0;

    // Analytic profiles when available (generators set these; file data
    // leaves them empty). Used by the constant-speed reference solution.
    std::function<double(double)> u0_fn;
    std::function<double(double)> u1_fn;
    std::function<double(double)> u0_prime_fn;

    double support_width() const { return support_hi - support_lo; }
};

/// C-infinity cutoff: 1 on [-r0, r0], 0 outside [-r1, r1], smooth between.
/// Returns (chi(s), chi'(s)).
std::pair<double, double> smooth_cutoff(double s, double r0, double r1);

/// Gaussian displacement bump amplitude*exp(-((x-center)/width)^2) and an
/// independent velocity bump of the same shape scaled by velocity_amplitude,
/// both multiplied by a smooth cutoff so the data has exact compact support.
/// support_radius <= 0 selects the default 8*width.
InitialData gaussian_bump(const Grid& grid, double amplitude, double center, double width,
                          double velocity_amplitude, double support_radius = 0.0);

/// Replace the velocity of `base` by u1 = -c(u0)|u0'| - slack*bump, which
/// makes both initial Riemann variables nonpositive pointwise.
InitialData nonpositive_riemann_data(const InitialData& base, double slack, const WaveSpeed& ws);

/// Pointwise initial Riemann data R0 = u1 + c(u0) u0', S0 = u1 - c(u0) u0'.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> initial_riemann(const InitialData& data,
                                                          const WaveSpeed& ws);

/// Load columns x,u0,u1,u0_prime from CSV; the x column must be uniformly
/// spaced and defines the returned grid.
std::pair<Grid, InitialData> load_initial_csv(const std::string& path);

/// Largest |u0| or |u1| sample outside the declared support interval.
double support_leakage(const InitialData& data);

} // namespace rwl
