#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rwl/grid.hpp"
#include "rwl/initial_data.hpp"
#include "rwl/wavespeed.hpp"

namespace rwl {

enum class SchemeOrder { Upwind1, Muscl2 };

struct SolverConfig {
    double cfl = 0.45;          // Courant number in (0,1)
    double t_end = 10.0;
    double lambda = 0.0;        // family parameter in [0,2]
    int output_every = 10;      // frames every this many steps
    SchemeOrder order = SchemeOrder::Upwind1;
    double blow_threshold = 1e3;  // abort when max(|u_t|,|u_x|) exceeds this
};

/// One time frame of the first-order system (u, R, S) on the grid.
struct FieldState {
    double t = 0.0;
    Eigen::ArrayXd u;
    Eigen::ArrayXd R;
    Eigen::ArrayXd S;
};

/// Thrown by step() when the state crosses the blow threshold; carries the
/// offending state so the caller can keep the partial trajectory.
struct BlowThresholdExceeded : Error {
    BlowThresholdExceeded(double t_, double value_, FieldState state_)
        : Error("blow threshold exceeded at t=" + std::to_string(t_)),
          t(t_), value(value_), state(std::move(state_)) {}
    double t;
    double value;  // max(sup|u_t|, sup|u_x|) at the abort
    FieldState state;
};

struct BlowEvent {
    double t;
    double value;
};

struct Trajectory {
    Grid grid;
    WaveSpeed speed;
    SolverConfig config;
    std::vector<FieldState> frames;
    std::vector<double> dt_history;
    std::vector<std::string> warnings;
    bool completed = false;
    std::optional<BlowEvent> blow;

    const FieldState& front() const { return frames.front(); }
    const FieldState& back() const { return frames.back(); }
};

/// dt = cfl * dx / max_i c(u_i).
double cfl_dt(const FieldState& state, const Grid& grid, const WaveSpeed& ws, double cfl);

/// One Heun (SSP RK2) step of
///   du/dt = (R+S)/2,
///   dR/dt =  c(u) dR/dx + f_R   (leftward transport, right-biased upwind),
///   dS/dt = -c(u) dS/dx + f_S   (rightward transport, left-biased upwind),
/// on the periodic grid. Throws NonFiniteState or BlowThresholdExceeded.
FieldState step(const FieldState& state, const Grid& grid, const WaveSpeed& ws,
                const SolverConfig& config, double dt);

/// Advance initial data to t_end, storing frames at t=0, every
/// config.output_every steps, and t_end. On a blow-threshold abort the
/// partial trajectory is returned with `blow` set (completed = false).
Trajectory simulate(const InitialData& data, const Grid& grid, const WaveSpeed& ws,
                    const SolverConfig& config);

/// (sup|u_t|, sup|u_x|) of a state, with u_t = (R+S)/2 and u_x = (R-S)/2c(u).
std::pair<double, double> state_sup_norms(const FieldState& state, const WaveSpeed& ws);

} // namespace rwl
