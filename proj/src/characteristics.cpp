#include "rwl/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

namespace rwl {

namespace {

// Periodic linear interpolation of a frame array at position x.
double interp_space(const Eigen::ArrayXd& q, const Grid& grid, double x) {
    const double dx = grid.dx();
    const double xw = grid.wrap(x);
    const double s = (xw - grid.x_min) / dx;
    const auto j = static_cast<Eigen::Index>(std::floor(s));
    const double f = s - static_cast<double>(j);
    const Eigen::Index j0 = std::min<Eigen::Index>(j, grid.n - 1);
    const Eigen::Index j1 = (j0 + 1) % grid.n;
    return (1.0 - f) * q[j0] + f * q[j1];
}

struct FrameBracket {
    std::size_t lo;
    std::size_t hi;
    double w;  // weight of hi
};

FrameBracket bracket_time(const Trajectory& traj, double t) {
    const auto& frames = traj.frames;
    if (t <= frames.front().t) return {0, 0, 0.0};
    if (t >= frames.back().t) return {frames.size() - 1, frames.size() - 1, 0.0};
    std::size_t lo = 0, hi = frames.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (frames[mid].t <= t)
            lo = mid;
        else
            hi = mid;
    }
    const double span = frames[hi].t - frames[lo].t;
    const double w = span > 0.0 ? (t - frames[lo].t) / span : 0.0;
    return {lo, hi, w};
}

double interp_field(const Trajectory& traj, const FrameBracket& b, double x,
                    Eigen::ArrayXd FieldState::* field) {
    const double lo = interp_space(traj.frames[b.lo].*field, traj.grid, x);
    if (b.lo == b.hi || b.w == 0.0) return lo;
    const double hi = interp_space(traj.frames[b.hi].*field, traj.grid, x);
    return (1.0 - b.w) * lo + b.w * hi;
}

} // namespace

CharacteristicCurve trace(const Trajectory& traj, double anchor_t, double anchor_x,
                          CharDirection direction) {
    if (traj.frames.empty())
        throw ParameterViolation("trace: empty trajectory");
    if (anchor_t < traj.frames.front().t || anchor_t > traj.frames.back().t)
        throw ParameterViolation("trace: anchor time outside trajectory range");
    if (anchor_x < traj.grid.x_min || anchor_x > traj.grid.x_max)
        throw ParameterViolation("trace: anchor position outside grid");

    const double sign = (direction == CharDirection::Plus) ? 1.0 : -1.0;
    auto velocity = [&](double t, double x) {
        const FrameBracket b = bracket_time(traj, t);
        const double u = interp_field(traj, b, x, &FieldState::u);
        return sign * traj.speed.evaluate(u).first;
    };
    auto weighted_value = [&](double t, double x) {
        const FrameBracket b = bracket_time(traj, t);
        const double u = interp_field(traj, b, x, &FieldState::u);
        const double q = (direction == CharDirection::Minus)
                             ? interp_field(traj, b, x, &FieldState::R)
                             : interp_field(traj, b, x, &FieldState::S);
        return q / std::sqrt(traj.speed.evaluate(u).first);
    };

    // Step times: the anchor, then every stored frame time strictly before it,
    // down to tau = 0.
    std::vector<double> times;
    times.push_back(anchor_t);
    for (auto it = traj.frames.rbegin(); it != traj.frames.rend(); ++it) {
        if (it->t < anchor_t - 1e-15 * std::max(1.0, anchor_t)) times.push_back(it->t);
    }

    CharacteristicCurve curve;
    curve.direction = direction;
    curve.anchor_t = anchor_t;
    curve.anchor_x = anchor_x;

    double x = anchor_x;
    curve.samples.push_back({anchor_t, anchor_x, weighted_value(anchor_t, anchor_x)});
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double t0 = times[k];
        const double t1 = times[k + 1];
        const double h = t0 - t1;  // > 0, stepping backward
        const double v0 = velocity(t0, x);
        const double xp = x - h * v0;
        const double v1 = velocity(t1, xp);
        x = x - 0.5 * h * (v0 + v1);
        if (x < traj.grid.x_min || x > traj.grid.x_max)
            throw CurveLeftDomain("characteristic left the domain at tau=" + std::to_string(t1));
        curve.samples.push_back({t1, x, weighted_value(t1, x)});
    }
    std::reverse(curve.samples.begin(), curve.samples.end());
    return curve;
}

std::optional<std::string> frame_spacing_warning(const Trajectory& traj) {
    if (traj.config.output_every <= 10) return std::nullopt;
    return "frame spacing is " + std::to_string(traj.config.output_every) +
           " steps (> 10); interpolation between frames degrades traced curves";
}

double monotonicity_tolerance(const Trajectory& traj, double kappa) {
    double dt_med = 0.0;
    if (!traj.dt_history.empty()) {
        std::vector<double> dts = traj.dt_history;
        std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
        dt_med = dts[dts.size() / 2];
    }
    return kappa * (traj.grid.dx() + dt_med);
}

MonotonicityReport weighted_monotonicity_report(const CharacteristicCurve& curve,
                                                double tol_rate, bool lambda_is_zero) {
    MonotonicityReport report;
    report.tol_rate = tol_rate;
    report.applicable = lambda_is_zero;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < curve.samples.size(); ++k) {
        const auto& a = curve.samples[k];
        const auto& b = curve.samples[k + 1];
        const double dtau = b.tau - a.tau;
        if (dtau <= 0.0) continue;
        worst = std::max(worst, (b.value - a.value) / dtau);
    }
    report.max_increase_rate = std::isfinite(worst) ? worst : 0.0;
    report.pass = report.max_increase_rate <= tol_rate;
    return report;
}

std::vector<std::pair<double, double>> random_anchors(const Trajectory& traj, int count,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double t_max = traj.frames.back().t;
    std::vector<std::pair<double, double>> anchors;
    anchors.reserve(count);
    int guard = 0;
    while (static_cast<int>(anchors.size()) < count && guard < 100 * count + 100) {
        ++guard;
        const double t = t_max * (0.05 + 0.95 * unit(rng));
        const double margin = traj.speed.c_sup() * t;
        const double lo = traj.grid.x_min + margin;
        const double hi = traj.grid.x_max - margin;
        if (hi <= lo) continue;  // domain too small for this t; resample
        anchors.emplace_back(t, lo + (hi - lo) * unit(rng));
    }
    if (static_cast<int>(anchors.size()) < count)
        throw ParameterViolation("random_anchors: domain too small for backward tracing");
    return anchors;
}

} // namespace rwl
