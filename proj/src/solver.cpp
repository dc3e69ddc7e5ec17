#include "rwl/solver.hpp"

#include <algorithm>
#include <cmath>

#include "rwl/riemann.hpp"

namespace rwl {

namespace {

using Eigen::ArrayXd;

// v_i = x_{i+1 mod n}
ArrayXd shift_up(const ArrayXd& x) {
    const Eigen::Index n = x.size();
    ArrayXd out(n);
    out.head(n - 1) = x.tail(n - 1);
    out[n - 1] = x[0];
    return out;
}

// v_i = x_{i-1 mod n}
ArrayXd shift_down(const ArrayXd& x) {
    const Eigen::Index n = x.size();
    ArrayXd out(n);
    out.tail(n - 1) = x.head(n - 1);
    out[0] = x[n - 1];
    return out;
}

double mc_slope(double dm, double dp) {
    // Monotonized-central limited slope from one-sided jumps.
    if (dm * dp <= 0.0) return 0.0;
    const double central = 0.5 * (dm + dp);
    const double lim = 2.0 * std::min(std::abs(dm), std::abs(dp));
    const double mag = std::min(std::abs(central), lim);
    return central > 0.0 ? mag : -mag;
}

// Derivative of q biased toward the right neighbor (for leftward transport).
ArrayXd dq_dx_right_biased(const ArrayXd& q, double dx, SchemeOrder order) {
    const Eigen::Index n = q.size();
    if (order == SchemeOrder::Upwind1) return (shift_up(q) - q) / dx;
    // MUSCL: face values reconstructed from the right cell, q_{i+1/2} =
    // q_{i+1} - sigma_{i+1}/2, differenced across the cell.
    ArrayXd sigma(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index im = (i == 0) ? n - 1 : i - 1;
        const Eigen::Index ip = (i == n - 1) ? 0 : i + 1;
        sigma[i] = mc_slope(q[i] - q[im], q[ip] - q[i]);
    }
    ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index ip = (i == n - 1) ? 0 : i + 1;
        out[i] = ((q[ip] - q[i]) - 0.5 * (sigma[ip] - sigma[i])) / dx;
    }
    return out;
}

// Derivative of q biased toward the left neighbor (for rightward transport).
ArrayXd dq_dx_left_biased(const ArrayXd& q, double dx, SchemeOrder order) {
    const Eigen::Index n = q.size();
    if (order == SchemeOrder::Upwind1) return (q - shift_down(q)) / dx;
    ArrayXd sigma(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index im = (i == 0) ? n - 1 : i - 1;
        const Eigen::Index ip = (i == n - 1) ? 0 : i + 1;
        sigma[i] = mc_slope(q[i] - q[im], q[ip] - q[i]);
    }
    ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index im = (i == 0) ? n - 1 : i - 1;
        out[i] = ((q[i] - q[im]) + 0.5 * (sigma[i] - sigma[im])) / dx;
    }
    return out;
}

struct Rates {
    ArrayXd du, dR, dS;
};

Rates rhs(const ArrayXd& u, const ArrayXd& R, const ArrayXd& S, const Grid& grid,
          const WaveSpeed& ws, const SolverConfig& config) {
    ArrayXd c, cp;
    ws.evaluate(u, c, cp);
    const double dx = grid.dx();
    Rates out;
    out.dR = c * dq_dx_right_biased(R, dx, config.order);
    out.dS = -c * dq_dx_left_biased(S, dx, config.order);
    if (config.lambda == 0.0) {
        out.dR += source_r_lambda0(R, S, c, cp);
        out.dS += source_s_lambda0(R, S, c, cp);
    } else {
        out.dR += source_r(R, S, c, cp, config.lambda);
        out.dS += source_s(R, S, c, cp, config.lambda);
    }
    out.du = 0.5 * (R + S);
    return out;
}

} // namespace

double cfl_dt(const FieldState& state, const Grid& grid, const WaveSpeed& ws, double cfl) {
    if (!(cfl > 0.0 && cfl < 1.0))
        throw ParameterViolation("cfl must lie in (0,1)");
    const double cmax = ws.speed(state.u).maxCoeff();
    return cfl * grid.dx() / cmax;
}

std::pair<double, double> state_sup_norms(const FieldState& state, const WaveSpeed& ws) {
    const Eigen::ArrayXd c = ws.speed(state.u);
    const double sup_ut = (0.5 * (state.R + state.S)).abs().maxCoeff();
    const double sup_ux = ((state.R - state.S) / (2.0 * c)).abs().maxCoeff();
    return {sup_ut, sup_ux};
}

FieldState step(const FieldState& state, const Grid& grid, const WaveSpeed& ws,
                const SolverConfig& config, double dt) {
    if (!(config.lambda >= 0.0 && config.lambda <= 2.0))
        throw LambdaOutOfRange("solver lambda must lie in [0,2]");
    const Rates k1 = rhs(state.u, state.R, state.S, grid, ws, config);
    const ArrayXd u1 = state.u + dt * k1.du;
    const ArrayXd R1 = state.R + dt * k1.dR;
    const ArrayXd S1 = state.S + dt * k1.dS;
    const Rates k2 = rhs(u1, R1, S1, grid, ws, config);

    FieldState out;
    out.t = state.t + dt;
    out.u = 0.5 * state.u + 0.5 * (u1 + dt * k2.du);
    out.R = 0.5 * state.R + 0.5 * (R1 + dt * k2.dR);
    out.S = 0.5 * state.S + 0.5 * (S1 + dt * k2.dS);

    if (!out.u.allFinite() || !out.R.allFinite() || !out.S.allFinite())
        throw NonFiniteState("non-finite state at t=" + std::to_string(out.t));

    const auto [sup_ut, sup_ux] = state_sup_norms(out, ws);
    const double peak = std::max(sup_ut, sup_ux);
    if (peak > config.blow_threshold)
        throw BlowThresholdExceeded(out.t, peak, std::move(out));
    return out;
}

Trajectory simulate(const InitialData& data, const Grid& grid, const WaveSpeed& ws,
                    const SolverConfig& config) {
    if (!(config.t_end > 0.0))
        throw ParameterViolation("t_end must be positive");
    if (config.output_every < 1)
        throw ParameterViolation("output_every must be >= 1");

    Trajectory traj{grid, ws, config, {}, {}, {}, false, std::nullopt};

    const double needed = data.support_width() + 2.0 * ws.c_sup() * config.t_end;
    if (grid.length() < needed) {
        traj.warnings.push_back(
            "WrapHazard: domain length " + std::to_string(grid.length()) +
            " < support width + 2 c_sup t_end = " + std::to_string(needed) +
            "; periodic wraparound may contaminate the solution");
    }
    const Eigen::Index last = data.u0.size() - 1;
    if (std::max({std::abs(data.u0[0]), std::abs(data.u1[0]), std::abs(data.u0[last]),
                  std::abs(data.u1[last])}) > 1e-12) {
        traj.warnings.push_back(
            "EdgeSupport: data is nonzero at the domain edges; grid extrema "
            "understate bound constants taken over the whole line");
    }
    FieldState state;
    state.t = 0.0;
    state.u = data.u0;
    auto [R0, S0] = initial_riemann(data, ws);
    state.R = std::move(R0);
    state.S = std::move(S0);
    traj.frames.push_back(state);

    const double t_end = config.t_end;
    long step_count = 0;
    while (state.t < t_end - 1e-14 * t_end) {
        double dt = cfl_dt(state, grid, ws, config.cfl);
        if (state.t + dt > t_end) dt = t_end - state.t;
        try {
            state = step(state, grid, ws, config, dt);
        } catch (BlowThresholdExceeded& e) {
            traj.dt_history.push_back(dt);
            traj.frames.push_back(std::move(e.state));
            traj.blow = BlowEvent{e.t, e.value};
            return traj;
        }
        traj.dt_history.push_back(dt);
        ++step_count;
        const bool at_end = state.t >= t_end - 1e-14 * t_end;
        if (at_end || step_count % config.output_every == 0)
            traj.frames.push_back(state);
        if (at_end) break;
    }
    traj.completed = true;
    return traj;
}

} // namespace rwl
