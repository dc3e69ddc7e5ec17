#pragma once

#include <Eigen/Core>

#include "rwl/errors.hpp"

namespace rwl {

/// Uniform periodic grid on [x_min, x_max): n cells, point i at x_min + i*dx.
/// The right endpoint is identified with x_min.
struct Grid {
    enum class Boundary { Periodic };

    double x_min;
    double x_max;
    int n;
    Boundary boundary = Boundary::Periodic;

    Grid(double x_min_, double x_max_, int n_)
        : x_min(x_min_), x_max(x_max_), n(n_) {
        if (n < 16)
            throw ParameterViolation("Grid: n must be >= 16");
        if (!(x_max > x_min))
            throw ParameterViolation("Grid: x_max must exceed x_min");
    }

    double dx() const { return (x_max - x_min) / n; }
    double length() const { return x_max - x_min; }

    Eigen::ArrayXd points() const {
        Eigen::ArrayXd x(n);
        const double h = dx();
        for (int i = 0; i < n; ++i) x[i] = x_min + i * h;
        return x;
    }

    /// Map an arbitrary coordinate into [x_min, x_max).
    double wrap(double x) const {
        const double L = length();
        double y = std::fmod(x - x_min, L);
        if (y < 0) y += L;
        return x_min + y;
    }
};

} // namespace rwl
