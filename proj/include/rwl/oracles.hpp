#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace rwl {

/// Exact solution machinery for the constant-speed wave equation,
/// u(t,x) = [u0(x-ct) + u0(x+ct)]/2 + [U1(x+ct) - U1(x-ct)]/(2c),
/// where U1 is an antiderivative of u1. U1 is built once by panel-wise
/// Gauss-Legendre quadrature cached on [x_lo, x_hi] and stays independent of
/// any PDE solver.
class LinearWaveOracle {
public:
    using Fn = std::function<double(double)>;

    /// The cache must cover every x +- c t queried later. resolution_hint is
    /// the characteristic length of u1's features (panel width = hint/50).
    LinearWaveOracle(double c, Fn u0, Fn u1, double x_lo, double x_hi,
                     double resolution_hint = 1.0);

    double speed() const { return c_; }
    double u0(double x) const { return u0_(x); }
    double u1(double x) const { return u1_(x); }
    double u1_antiderivative(double x) const;
    double operator()(double t, double x) const;

private:
    double c_;
    Fn u0_;
    Fn u1_;
    double x_lo_;
    double panel_;
    std::vector<double> prefix_;  // antiderivative at panel boundaries
};

double dalembert(const LinearWaveOracle& oracle, double t, double x);

/// Classical fixed-step RK4 for y' = rhs(t, y); returns the (t_k, y_k) series
/// including the initial point.
std::vector<std::pair<double, double>> ode_reference(
    const std::function<double(double, double)>& rhs, double y0, double t_end, int n_steps);

} // namespace rwl
