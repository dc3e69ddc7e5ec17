#include "rwl/wavespeed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace rwl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bracket refinement by ternary search over a fixed dyadic lattice on
// [-window, window]. The probe sequence depends only on the function and the
// window, never on the dense sample count, so combining this with the nested
// dense scan keeps damping_constant exactly monotone under scan refinement.
double lattice_refine(const std::function<double(double)>& g, double window) {
    const std::int64_t lattice = std::int64_t(1) << 30;
    const double spacing = 2.0 * window / static_cast<double>(lattice);
    auto theta_of = [&](std::int64_t i) { return -window + spacing * static_cast<double>(i); };
    std::int64_t lo = 0;
    std::int64_t hi = lattice;
    double best = -std::numeric_limits<double>::infinity();
    while (hi - lo > 2) {
        const std::int64_t m1 = lo + (hi - lo) / 3;
        const std::int64_t m2 = hi - (hi - lo) / 3;
        const double g1 = g(theta_of(m1));
        const double g2 = g(theta_of(m2));
        best = std::max({best, g1, g2});
        if (g1 < g2)
            lo = m1;
        else
            hi = m2;
    }
    for (std::int64_t i = lo; i <= hi; ++i) best = std::max(best, g(theta_of(i)));
    return best;
}

} // namespace

WaveSpeed WaveSpeed::tanh_speed(double c0, double delta) {
    if (!(c0 > delta && delta > 0.0))
        throw ParameterViolation("tanh speed requires c0 > delta > 0");
    WaveSpeed ws;
    ws.family_ = SpeedFamily::Tanh;
    ws.p0_ = c0;
    ws.p1_ = delta;
    ws.c_star_ = c0 - delta;
    ws.c_sup_ = c0 + delta;
    ws.damping_A_ = damping_constant(ws, ws.window_, ws.samples_ - 1);
    return ws;
}

WaveSpeed WaveSpeed::logistic_speed(double c_minus, double c_plus) {
    if (!(0.0 < c_minus && c_minus < c_plus))
        throw ParameterViolation("logistic speed requires 0 < c_minus < c_plus");
    WaveSpeed ws;
    ws.family_ = SpeedFamily::Logistic;
    ws.p0_ = c_minus;
    ws.p1_ = c_plus;
    ws.c_star_ = c_minus;
    ws.c_sup_ = c_plus;
    ws.damping_A_ = damping_constant(ws, ws.window_, ws.samples_ - 1);
    return ws;
}

WaveSpeed WaveSpeed::arctan_speed(double c0, double delta) {
    if (!(delta > 0.0 && c0 > 0.5 * kPi * delta))
        throw ParameterViolation("arctan speed requires c0 > (pi/2) delta > 0");
    WaveSpeed ws;
    ws.family_ = SpeedFamily::Arctan;
    ws.p0_ = c0;
    ws.p1_ = delta;
    ws.c_star_ = c0 - 0.5 * kPi * delta;
    ws.c_sup_ = c0 + 0.5 * kPi * delta;
    ws.damping_A_ = damping_constant(ws, ws.window_, ws.samples_ - 1);
    return ws;
}

WaveSpeed WaveSpeed::custom(Fn c, Fn c_prime, double c_star, double c_sup,
                            double sample_window, int sample_count) {
    if (!c || !c_prime)
        throw ParameterViolation("custom speed requires both c and c'");
    if (!(c_star > 0.0 && c_sup >= c_star))
        throw ParameterViolation("custom speed requires 0 < c_star <= c_sup");
    if (!(sample_window > 0.0) || sample_count < 2)
        throw ParameterViolation("custom speed: bad sampling parameters");
    WaveSpeed ws;
    ws.family_ = SpeedFamily::CustomMonotone;
    ws.c_fn_ = std::move(c);
    ws.cp_fn_ = std::move(c_prime);
    ws.c_star_ = c_star;
    ws.c_sup_ = c_sup;
    ws.window_ = sample_window;
    ws.samples_ = sample_count;
    ws.damping_A_ = damping_constant(ws, ws.window_, ws.samples_ - 1);
    return ws;
}

WaveSpeed WaveSpeed::constant(double c) {
    if (!(c > 0.0))
        throw ParameterViolation("constant speed must be positive");
    return custom([c](double) { return c; }, [](double) { return 0.0; }, c, c);
}

std::pair<double, double> WaveSpeed::evaluate(double theta) const {
    if (!std::isfinite(theta))
        throw NonFiniteInput("wave speed evaluated at non-finite theta");
    switch (family_) {
        case SpeedFamily::Tanh: {
            const double t = std::tanh(theta);
            return {p0_ + p1_ * t, p1_ * (1.0 - t * t)};
        }
        case SpeedFamily::Logistic: {
            const double s = 1.0 / (1.0 + std::exp(-theta));
            return {p0_ + (p1_ - p0_) * s, (p1_ - p0_) * s * (1.0 - s)};
        }
        case SpeedFamily::Arctan:
            return {p0_ + p1_ * std::atan(theta), p1_ / (1.0 + theta * theta)};
        case SpeedFamily::CustomMonotone:
            return {c_fn_(theta), cp_fn_(theta)};
    }
    throw Error("unreachable wave-speed family");
}

void WaveSpeed::evaluate(const Eigen::ArrayXd& theta, Eigen::ArrayXd& c,
                         Eigen::ArrayXd& c_prime) const {
    switch (family_) {
        case SpeedFamily::Tanh: {
            const Eigen::ArrayXd t = theta.tanh();
            c = p0_ + p1_ * t;
            c_prime = p1_ * (1.0 - t.square());
            return;
        }
        case SpeedFamily::Logistic: {
            const Eigen::ArrayXd s = 1.0 / (1.0 + (-theta).exp());
            c = p0_ + (p1_ - p0_) * s;
            c_prime = (p1_ - p0_) * s * (1.0 - s);
            return;
        }
        case SpeedFamily::Arctan: {
            c = p0_ + p1_ * theta.atan();
            c_prime = p1_ / (1.0 + theta.square());
            return;
        }
        case SpeedFamily::CustomMonotone: {
            const Eigen::Index n = theta.size();
            c.resize(n);
            c_prime.resize(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                c[i] = c_fn_(theta[i]);
                c_prime[i] = cp_fn_(theta[i]);
            }
            return;
        }
    }
}

Eigen::ArrayXd WaveSpeed::speed(const Eigen::ArrayXd& theta) const {
    Eigen::ArrayXd c, cp;
    evaluate(theta, c, cp);
    return c;
}

std::string WaveSpeed::describe() const {
    std::ostringstream os;
    switch (family_) {
        case SpeedFamily::Tanh: os << "tanh(c0=" << p0_ << ", delta=" << p1_ << ")"; break;
        case SpeedFamily::Logistic: os << "logistic(c-=" << p0_ << ", c+=" << p1_ << ")"; break;
        case SpeedFamily::Arctan: os << "arctan(c0=" << p0_ << ", delta=" << p1_ << ")"; break;
        case SpeedFamily::CustomMonotone: os << "custom"; break;
    }
    os << " [c*=" << c_star_ << ", c^*=" << c_sup_ << ", A=" << damping_A_ << "]";
    return os.str();
}

double damping_constant(const WaveSpeed& ws, double window, int n_intervals) {
    if (n_intervals < 1)
        throw ParameterViolation("damping_constant: need at least one interval");
    auto g = [&ws](double theta) {
        const auto [c, cp] = ws.evaluate(theta);
        return cp / (2.0 * c);
    };
    // Nested sample points -window + 2*window*k/n: doubling n_intervals
    // keeps every previous point, so the dense maximum is monotone.
    double best = -1.0;
    for (int k = 0; k <= n_intervals; ++k) {
        const double theta = -window + 2.0 * window * (static_cast<double>(k) / n_intervals);
        best = std::max(best, g(theta));
    }
    return std::max(0.0, std::max(best, lattice_refine(g, window)));
}

double damping_constant(const WaveSpeed& ws) {
    return damping_constant(ws, ws.sample_window(), ws.sample_count() - 1);
}

std::string SpeedViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Positivity: os << "positivity"; break;
        case Kind::BelowLower: os << "below c_star"; break;
        case Kind::AboveUpper: os << "above c_sup"; break;
        case Kind::Monotonicity: os << "monotonicity"; break;
    }
    os << " violated at theta=" << theta << " (value " << value << ")";
    return os.str();
}

ValidationReport validate(const WaveSpeed& ws, double theta_lo, double theta_hi, int n_samples) {
    if (n_samples < 2)
        throw ParameterViolation("validate: n_samples must be >= 2");
    if (!(theta_hi > theta_lo))
        throw ParameterViolation("validate: empty theta range");
    ValidationReport report;
    const double bound_tol = 1e-9 * std::max(1.0, std::abs(ws.c_sup()));
    const double mono_tol = 1e-12;
    auto record = [&report](SpeedViolation::Kind kind, double theta, double value) {
        report.pass = false;
        ++report.violation_count;
        if (report.violations.size() < ValidationReport::max_recorded)
            report.violations.push_back({kind, theta, value});
    };
    for (int k = 0; k < n_samples; ++k) {
        const double theta =
            theta_lo + (theta_hi - theta_lo) * (static_cast<double>(k) / (n_samples - 1));
        const auto [c, cp] = ws.evaluate(theta);
        ++report.checked;
        if (!(c > 0.0))
            record(SpeedViolation::Kind::Positivity, theta, c);
        else if (c < ws.c_star() - bound_tol)
            record(SpeedViolation::Kind::BelowLower, theta, c);
        else if (c > ws.c_sup() + bound_tol)
            record(SpeedViolation::Kind::AboveUpper, theta, c);
        if (cp < -mono_tol)
            record(SpeedViolation::Kind::Monotonicity, theta, cp);
    }
    return report;
}

} // namespace rwl
