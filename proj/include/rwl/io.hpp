#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "rwl/bounds.hpp"
#include "rwl/characteristics.hpp"
#include "rwl/diagnostics.hpp"
#include "rwl/solver.hpp"

namespace rwl {

/// Shortest-exact decimal for a double (17 significant digits).
std::string format_double(double v);

/// One frame as CSV with header t,x,u,R,S,ut,ux.
void write_frame_csv(const std::string& path, const FieldState& frame, const Grid& grid,
                     const WaveSpeed& ws);

/// Every stored frame as dir/frame_NNNNNN.csv plus dir/frames_index.csv.
void write_trajectory_frames(const std::string& dir, const Trajectory& traj);

/// A characteristic curve as CSV with header tau,X,value.
void write_trace_csv(const std::string& path, const CharacteristicCurve& curve);

nlohmann::ordered_json certificate_json(const BoundCertificate& cert);
nlohmann::ordered_json blowup_json(const BlowUpReport& report, double threshold);
nlohmann::ordered_json trajectory_summary_json(const Trajectory& traj);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

} // namespace rwl
