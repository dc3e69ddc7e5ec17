#include "rwl/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace rwl {

BoundConstants bound_constants(const Eigen::ArrayXd& R0, const Eigen::ArrayXd& S0,
                               const WaveSpeed& ws) {
    if (R0.size() == 0 || S0.size() == 0)
        throw ParameterViolation("bound_constants: empty initial Riemann data");
    BoundConstants k;
    const double ratio = std::sqrt(ws.c_sup() / ws.c_star());
    k.P_R = ratio * std::max(0.0, R0.maxCoeff());
    k.P_S = ratio * std::max(0.0, S0.maxCoeff());
    k.P = std::max(k.P_R, k.P_S);
    k.m0 = std::min({0.0, R0.minCoeff(), S0.minCoeff()});
    k.A = ws.damping_A();
    return k;
}

double envelope_y(const BoundConstants& k, double t) {
    if (!(t >= 0.0))
        throw DomainViolation("envelope_y: t must be >= 0");
    const double ap = k.A * k.P;
    // AP = 0 degenerates the ODE to y' = 0; t = 0 is the initial condition.
    // Both are exact, not rounded through the closed form.
    if (ap == 0.0 || t == 0.0) return k.m0;
    return k.P + (k.m0 - k.P) * std::exp(ap * t);
}

double envelope_y_eta(const BoundConstants& k, double eta, double t) {
    if (!(eta > 0.0))
        throw DomainViolation("envelope_y_eta: eta must be > 0");
    if (!(t >= 0.0))
        throw DomainViolation("envelope_y_eta: t must be >= 0");
    const double ap = k.A * k.P;
    if (ap == 0.0) return k.m0 - eta - eta * t;
    if (t == 0.0) return k.m0 - eta;
    const double y_e = k.P + eta / ap;  // equilibrium of the perturbed ODE
    return y_e + (k.m0 - eta - y_e) * std::exp(ap * t);
}

double comparison_gap(double P, double y, double s) {
    if (!(P >= 0.0) || !(y <= s) || !(s <= P))
        throw DomainViolation("comparison_gap requires y <= s <= P with P >= 0");
    return (P - s) * ((P + s) - y);
}

double default_certificate_tol(double dx) { return std::max(1e-8, 10.0 * dx); }

BoundCertificate certify(const Trajectory& traj, const BoundConstants& k, double tol) {
    BoundCertificate cert;
    cert.constants = k;
    cert.tol = tol;
    cert.applicable = (traj.config.lambda == 0.0);
    cert.pass = true;
    for (const FieldState& frame : traj.frames) {
        const double y = envelope_y(k, frame.t);
        Eigen::Index iRmin, iRmax, iSmin, iSmax;
        const double Rmin = frame.R.minCoeff(&iRmin);
        const double Rmax = frame.R.maxCoeff(&iRmax);
        const double Smin = frame.S.minCoeff(&iSmin);
        const double Smax = frame.S.maxCoeff(&iSmax);
        cert.frames.push_back({frame.t, Rmin - y, Smin - y, Rmax - k.P, Smax - k.P});
        if (cert.pass) {
            const double dx = traj.grid.dx();
            auto x_of = [&](Eigen::Index i) { return traj.grid.x_min + i * dx; };
            if (Rmax - k.P > tol) {
                cert.pass = false;
                cert.first_failure = FirstFailure{frame.t, x_of(iRmax), "R_upper"};
            } else if (Smax - k.P > tol) {
                cert.pass = false;
                cert.first_failure = FirstFailure{frame.t, x_of(iSmax), "S_upper"};
            } else if (Rmin - y < -tol) {
                cert.pass = false;
                cert.first_failure = FirstFailure{frame.t, x_of(iRmin), "R_lower"};
            } else if (Smin - y < -tol) {
                cert.pass = false;
                cert.first_failure = FirstFailure{frame.t, x_of(iSmin), "S_lower"};
            }
        }
    }
    return cert;
}

} // namespace rwl
