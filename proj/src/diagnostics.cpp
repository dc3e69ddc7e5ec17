#include "rwl/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace rwl {

SupNorms sup_norms(const FieldState& state, const WaveSpeed& ws) {
    const Eigen::ArrayXd c = ws.speed(state.u);
    SupNorms norms;
    norms.sup_ut = (0.5 * (state.R + state.S)).abs().maxCoeff();
    norms.sup_ux = ((state.R - state.S) / (2.0 * c)).abs().maxCoeff();
    const double abs_max = (state.R.abs() + state.S.abs()).maxCoeff();
    norms.bound_ut = 0.5 * abs_max;
    norms.bound_ux = abs_max / (2.0 * ws.c_star());
    return norms;
}

double energy(const FieldState& state, const Grid& grid, const WaveSpeed& ws) {
    const Eigen::ArrayXd c = ws.speed(state.u);
    const Eigen::ArrayXd ut = 0.5 * (state.R + state.S);
    const Eigen::ArrayXd ux = (state.R - state.S) / (2.0 * c);
    return grid.dx() * (ut.square() + c.square() * ux.square()).sum();
}

double riemann_consistency(const FieldState& state, const Grid& grid, const WaveSpeed& ws) {
    const Eigen::ArrayXd c = ws.speed(state.u);
    const Eigen::Index n = state.u.size();
    const double dx = grid.dx();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index im = (i == 0) ? n - 1 : i - 1;
        const Eigen::Index ip = (i == n - 1) ? 0 : i + 1;
        const double centered = (state.u[ip] - state.u[im]) / (2.0 * dx);
        const double from_riemann = (state.R[i] - state.S[i]) / (2.0 * c[i]);
        worst = std::max(worst, std::abs(centered - from_riemann));
    }
    return worst;
}

BlowUpReport detect_blowup(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0))
        throw ParameterViolation("detect_blowup: threshold must be positive");
    BlowUpReport report;
    for (const FieldState& frame : traj.frames) {
        const auto [sup_ut, sup_ux] = state_sup_norms(frame, traj.speed);
        report.peak_history.push_back({frame.t, sup_ut, sup_ux});
        if (!report.detected && sup_ut + sup_ux > threshold) {
            report.detected = true;
            report.t_detect = frame.t;
            report.quantity = sup_ut >= sup_ux ? "ut" : "ux";
        }
    }
    if (report.detected) {
        // Fit 1/sup|u_x| against t over the frames leading into detection.
        std::vector<std::pair<double, double>> pts;
        for (const auto& h : report.peak_history) {
            if (h[0] > *report.t_detect) break;
            if (h[2] > 0.0) pts.emplace_back(h[0], 1.0 / h[2]);
        }
        const std::size_t window = 12;
        if (pts.size() > window) pts.erase(pts.begin(), pts.end() - window);
        if (pts.size() >= 4) {
            double st = 0, sy = 0, stt = 0, sty = 0;
            for (auto [t, y] : pts) {
                st += t;
                sy += y;
                stt += t * t;
                sty += t * y;
            }
            const double m = static_cast<double>(pts.size());
            const double det = m * stt - st * st;
            if (det > 0.0) {
                const double slope = (m * sty - st * sy) / det;
                const double intercept = (sy * stt - st * sty) / det;
                double ss = 0.0;
                for (auto [t, y] : pts) {
                    const double r = y - (intercept + slope * t);
                    ss += r * r;
                }
                if (slope < 0.0) {
                    report.growth_fit =
                        RiccatiFit{-intercept / slope, slope, intercept, std::sqrt(ss / m)};
                }
            }
        }
    }
    return report;
}

} // namespace rwl
