#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rwl/solver.hpp"
#include "rwl/wavespeed.hpp"

namespace rwl {

/// Constants of the a priori sandwich: R,S are bounded above by P and below
/// by the envelope y(t) driven by the damping constant A and m0.
struct BoundConstants {
    double P_R = 0.0;
    double P_S = 0.0;
    double P = 0.0;   // max(P_R, P_S) >= 0
    double m0 = 0.0;  // min(0, inf R0, inf S0) <= 0
    double A = 0.0;   // sup c'/(2c)
};

/// P_R = sqrt(c_sup/c_star) * max(0, max R0), P_S likewise; m0 from the
/// minima; A from the wave speed.
BoundConstants bound_constants(const Eigen::ArrayXd& R0, const Eigen::ArrayXd& S0,
                               const WaveSpeed& ws);

/// Lower envelope y(t) = P + (m0 - P) e^{APt}; identically m0 when AP = 0.
double envelope_y(const BoundConstants& k, double t);

/// Perturbed envelope solving y' = A(Py - P^2) - eta, y(0) = m0 - eta.
double envelope_y_eta(const BoundConstants& k, double eta, double t);

/// The comparison inequality's slack s(y - s) - (Py - P^2) = (P-s)(P+s-y),
/// nonnegative for y <= s <= P. Throws DomainViolation outside that region.
double comparison_gap(double P, double y, double s);

struct FrameMargins {
    double t;
    double minR_minus_y;
    double minS_minus_y;
    double maxR_minus_P;
    double maxS_minus_P;
};

struct FirstFailure {
    double t;
    double x;
    std::string bound;  // "R_upper" | "S_upper" | "R_lower" | "S_lower"
};

struct BoundCertificate {
    BoundConstants constants;
    double tol = 0.0;
    bool applicable = true;  // certification semantics only hold for lambda = 0
    std::vector<FrameMargins> frames;
    bool pass = false;
    std::optional<FirstFailure> first_failure;
};

/// Default certification tolerance max(1e-8, 10*dx).
double default_certificate_tol(double dx);

/// Check y(t) - tol <= R,S <= P + tol on every stored frame.
BoundCertificate certify(const Trajectory& traj, const BoundConstants& k, double tol);

} // namespace rwl
