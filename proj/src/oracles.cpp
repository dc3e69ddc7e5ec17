#include "rwl/oracles.hpp"

#include <cmath>
#include <cstddef>

#include "rwl/errors.hpp"

namespace rwl {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

double gl5(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += kGlWeight[k] * f(mid + half * kGlNode[k]);
    return half * acc;
}

} // namespace

LinearWaveOracle::LinearWaveOracle(double c, Fn u0, Fn u1, double x_lo, double x_hi,
                                   double resolution_hint)
    : c_(c), u0_(std::move(u0)), u1_(std::move(u1)), x_lo_(x_lo) {
    if (!(c > 0.0))
        throw NonPositiveSpeed("LinearWaveOracle: speed must be positive");
    if (!(x_hi > x_lo) || !(resolution_hint > 0.0))
        throw ParameterViolation("LinearWaveOracle: bad cache range or resolution hint");
    panel_ = resolution_hint / 50.0;
    const auto n_panels = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / panel_));
    prefix_.resize(n_panels + 1);
    prefix_[0] = 0.0;
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = x_lo_ + static_cast<double>(k) * panel_;
        prefix_[k + 1] = prefix_[k] + gl5(u1_, a, a + panel_);
    }
}

double LinearWaveOracle::u1_antiderivative(double x) const {
    const double s = (x - x_lo_) / panel_;
    if (s < 0.0 || s > static_cast<double>(prefix_.size() - 1))
        throw DomainViolation("u1 antiderivative queried outside its cache range");
    auto k = static_cast<std::size_t>(s);
    if (k >= prefix_.size() - 1) k = prefix_.size() - 2;
    const double a = x_lo_ + static_cast<double>(k) * panel_;
    return prefix_[k] + gl5(u1_, a, x);
}

double LinearWaveOracle::operator()(double t, double x) const {
    if (!(t >= 0.0))
        throw DomainViolation("dalembert: t must be >= 0");
    const double l = x - c_ * t;
    const double r = x + c_ * t;
    return 0.5 * (u0_(l) + u0_(r)) +
           (u1_antiderivative(r) - u1_antiderivative(l)) / (2.0 * c_);
}

double dalembert(const LinearWaveOracle& oracle, double t, double x) { return oracle(t, x); }

std::vector<std::pair<double, double>> ode_reference(
    const std::function<double(double, double)>& rhs, double y0, double t_end, int n_steps) {
    if (n_steps < 10)
        throw ParameterViolation("ode_reference: n_steps must be >= 10");
    std::vector<std::pair<double, double>> series;
    series.reserve(n_steps + 1);
    const double h = t_end / n_steps;
    double t = 0.0;
    double y = y0;
    series.emplace_back(t, y);
    for (int k = 0; k < n_steps; ++k) {
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = (k + 1 == n_steps) ? t_end : t + h;
        series.emplace_back(t, y);
    }
    return series;
}

} // namespace rwl
