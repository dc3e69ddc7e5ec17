#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwl/grid.hpp"
#include "rwl/initial_data.hpp"
#include "rwl/solver.hpp"
#include "rwl/wavespeed.hpp"

namespace rwl {

/// Flat dotted-key run configuration. Parsed from `key = value` files;
/// unknown keys are rejected with the offending key named.
struct RunConfig {
    // speed.*
    std::string speed_family = "tanh";  // tanh | logistic | arctan | constant
    double speed_c0 = 2.0;
    double speed_delta = 1.0;
    double speed_c_minus = 1.0;
    double speed_c_plus = 3.0;
    double speed_sample_window = 50.0;
    int speed_sample_count = 4001;
    // data.*
    std::string data_kind = "gaussian";  // gaussian | nonpositive | file
    double data_amplitude = 1.0;
    double data_center = 0.0;
    double data_width = 2.0;
    double data_velocity_amplitude = 0.0;
    double data_slack = 0.0;
    double data_support_radius = 0.0;  // <= 0: default 8*width
    std::string data_file;
    // grid.*
    double grid_x_min = -40.0;
    double grid_x_max = 40.0;
    int grid_n = 8000;
    // solver.*
    double solver_cfl = 0.45;
    double solver_t_end = 10.0;
    double solver_lambda = 0.0;
    std::string solver_order = "upwind1";  // upwind1 | muscl2
    int solver_output_every = 10;
    double solver_blow_threshold = 1e3;
    // certify.*
    double certify_tol = 0.0;  // <= 0: max(1e-8, 10*dx)
    // trace.*
    double trace_anchor_t = -1.0;
    double trace_anchor_x = 0.0;
    std::string trace_direction = "minus";
    int trace_n_anchors_random = 0;
    double trace_kappa = 5.0;
    // sweep.*
    std::vector<double> sweep_lambdas;
    // top-level
    std::uint64_t seed = 20260811;
    std::string output_dir = "out";
};

RunConfig parse_config_file(const std::string& path);

/// Apply one `key=value` override; throws ConfigError on unknown keys or
/// malformed values.
void apply_override(RunConfig& rc, const std::string& key, const std::string& value);

std::vector<std::string> known_config_keys();

WaveSpeed make_speed(const RunConfig& rc);
Grid make_grid(const RunConfig& rc);
InitialData make_data(const RunConfig& rc, const Grid& grid, const WaveSpeed& ws);
SolverConfig make_solver_config(const RunConfig& rc);
double resolved_certify_tol(const RunConfig& rc);

/// The fully resolved configuration, embedded in every JSON summary.
nlohmann::ordered_json config_json(const RunConfig& rc);

} // namespace rwl
