#pragma once

#include <cmath>
#include <utility>

#include "rwl/errors.hpp"

namespace rwl {

/// Riemann variables R = u_t + c(u) u_x and S = u_t - c(u) u_x.
struct RiemannPair {
    double R;
    double S;
};

/// Right-hand sides of the transport equations for R and S.
struct SourcePair {
    double f_R;
    double f_S;
};

inline RiemannPair to_riemann(double u_t, double u_x, double c_of_u) {
    if (!(c_of_u > 0.0))
        throw NonPositiveSpeed("to_riemann: c(u) must be positive");
    const double p = c_of_u * u_x;
    return {u_t + p, u_t - p};
}

namespace detail {
// Knuth TwoSum error term: a + b = fl(a+b) + err exactly.
inline double two_sum_err(double a, double b, double s) {
    const double bv = s - a;
    const double av = s - bv;
    return (a - av) + (b - bv);
}
} // namespace detail

inline std::pair<double, double> from_riemann(double R, double S, double c_of_u) {
    if (!(c_of_u > 0.0))
        throw NonPositiveSpeed("from_riemann: c(u) must be positive");
    const double u_t = 0.5 * (R + S);
    // u_x = (R - S)/(2c) with the subtraction error compensated and the
    // division remainder recovered by fma, so the quotient is correctly
    // rounded; keeps the roundtrip with to_riemann inside one ulp.
    const double d = R - S;
    const double e = detail::two_sum_err(R, -S, d);
    const double twoc = 2.0 * c_of_u;
    const double q = d / twoc;
    const double rem = std::fma(-q, twoc, d);
    return {u_t, q + (rem + e) / twoc};
}

// The quadratic brackets are evaluated in factored form,
//   lam*R^2 + 2(1-lam)*R*S - (2-lam)*S^2 = (R - S)(lam*R + (2-lam)*S),
// so that both sources vanish exactly when R == S, for every lam.
inline SourcePair source_terms(double R, double S, double c, double c_prime, double lambda) {
    if (!(c > 0.0))
        throw NonPositiveSpeed("source_terms: c must be positive");
    if (!(lambda >= 0.0 && lambda <= 2.0))
        throw LambdaOutOfRange("source_terms: lambda must lie in [0, 2]");
    const double q = c_prime / (4.0 * c);
    const double d = R - S;
    return {q * d * (lambda * R + (2.0 - lambda) * S),
            q * (-d) * (lambda * S + (2.0 - lambda) * R)};
}

/// Specialized lambda = 0 sources, f_R = (c'/2c) S (R - S) and
/// f_S = (c'/2c) R (S - R); identical to source_terms(..., 0) up to rounding.
inline SourcePair source_terms_lambda0(double R, double S, double c, double c_prime) {
    if (!(c > 0.0))
        throw NonPositiveSpeed("source_terms_lambda0: c must be positive");
    const double q = c_prime / (2.0 * c);
    return {q * S * (R - S), q * R * (S - R)};
}

// Expression-friendly array forms for the solver hot loop. No argument
// checking: callers guarantee c > 0 (wave speeds are uniformly positive).

template <class TR, class TS, class TC, class TP>
auto source_r(const TR& R, const TS& S, const TC& c, const TP& cp, double lambda) {
    return cp / (4.0 * c) * (R - S) * (lambda * R + (2.0 - lambda) * S);
}

template <class TR, class TS, class TC, class TP>
auto source_s(const TR& R, const TS& S, const TC& c, const TP& cp, double lambda) {
    return cp / (4.0 * c) * (S - R) * (lambda * S + (2.0 - lambda) * R);
}

template <class TR, class TS, class TC, class TP>
auto source_r_lambda0(const TR& R, const TS& S, const TC& c, const TP& cp) {
    return cp / (2.0 * c) * S * (R - S);
}

template <class TR, class TS, class TC, class TP>
auto source_s_lambda0(const TR& R, const TS& S, const TC& c, const TP& cp) {
    return cp / (2.0 * c) * R * (S - R);
}

} // namespace rwl
