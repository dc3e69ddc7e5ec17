#include "rwl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace rwl {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_frame_csv(const std::string& path, const FieldState& frame, const Grid& grid,
                     const WaveSpeed& ws) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write frame file: " + path);
    out << "t,x,u,R,S,ut,ux\n";
    const Eigen::ArrayXd c = ws.speed(frame.u);
    const double dx = grid.dx();
    for (Eigen::Index i = 0; i < frame.u.size(); ++i) {
        const double x = grid.x_min + static_cast<double>(i) * dx;
        const double ut = 0.5 * (frame.R[i] + frame.S[i]);
        const double ux = (frame.R[i] - frame.S[i]) / (2.0 * c[i]);
        out << format_double(frame.t) << ',' << format_double(x) << ','
            << format_double(frame.u[i]) << ',' << format_double(frame.R[i]) << ','
            << format_double(frame.S[i]) << ',' << format_double(ut) << ','
            << format_double(ux) << '\n';
    }
}

void write_trajectory_frames(const std::string& dir, const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    std::ofstream index(dir + "/frames_index.csv");
    index << "frame,t,file\n";
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.csv", k);
        write_frame_csv(dir + "/" + name, traj.frames[k], traj.grid, traj.speed);
        index << k << ',' << format_double(traj.frames[k].t) << ',' << name << '\n';
    }
}

void write_trace_csv(const std::string& path, const CharacteristicCurve& curve) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write trace file: " + path);
    out << "tau,X,value\n";
    for (const auto& s : curve.samples)
        out << format_double(s.tau) << ',' << format_double(s.x) << ','
            << format_double(s.value) << '\n';
}

nlohmann::ordered_json certificate_json(const BoundCertificate& cert) {
    nlohmann::ordered_json j;
    j["P_R"] = cert.constants.P_R;
    j["P_S"] = cert.constants.P_S;
    j["P"] = cert.constants.P;
    j["m0"] = cert.constants.m0;
    j["A"] = cert.constants.A;
    j["tol"] = cert.tol;
    j["applicable"] = cert.applicable;
    j["verdict"] = cert.pass ? "pass" : "fail";
    if (cert.first_failure) {
        j["first_failure"] = {{"t", cert.first_failure->t},
                              {"x", cert.first_failure->x},
                              {"bound", cert.first_failure->bound}};
    } else {
        j["first_failure"] = nullptr;
    }
    nlohmann::ordered_json frames = nlohmann::ordered_json::array();
    for (const auto& f : cert.frames) {
        frames.push_back({{"t", f.t},
                          {"minR_minus_y", f.minR_minus_y},
                          {"minS_minus_y", f.minS_minus_y},
                          {"maxR_minus_P", f.maxR_minus_P},
                          {"maxS_minus_P", f.maxS_minus_P}});
    }
    j["frames"] = std::move(frames);
    return j;
}

nlohmann::ordered_json blowup_json(const BlowUpReport& report, double threshold) {
    nlohmann::ordered_json j;
    j["detected"] = report.detected;
    j["t_detect"] = report.t_detect ? nlohmann::ordered_json(*report.t_detect)
                                    : nlohmann::ordered_json(nullptr);
    j["quantity"] = report.quantity;
    j["threshold"] = threshold;
    if (report.growth_fit) {
        j["riccati_fit"] = {{"t_star", report.growth_fit->t_star},
                            {"slope", report.growth_fit->slope},
                            {"intercept", report.growth_fit->intercept},
                            {"residual", report.growth_fit->residual},
                            {"heuristic", true}};
    } else {
        j["riccati_fit"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json trajectory_summary_json(const Trajectory& traj) {
    nlohmann::ordered_json j;
    j["completed"] = traj.completed;
    j["n_frames"] = traj.frames.size();
    j["n_steps"] = traj.dt_history.size();
    if (!traj.dt_history.empty()) {
        const auto [lo, hi] =
            std::minmax_element(traj.dt_history.begin(), traj.dt_history.end());
        j["dt_min"] = *lo;
        j["dt_max"] = *hi;
    }
    j["t_final"] = traj.frames.empty() ? 0.0 : traj.frames.back().t;
    // Worst-case mid-step Courant number if u jumped to the speed's sup.
    j["cfl_sanity"] = traj.config.cfl * traj.speed.c_sup() / traj.speed.c_star();
    j["warnings"] = traj.warnings;
    if (traj.blow) {
        j["blow_abort"] = {{"t", traj.blow->t}, {"value", traj.blow->value}};
    } else {
        j["blow_abort"] = nullptr;
    }
    nlohmann::ordered_json sup_series = nlohmann::ordered_json::array();
    nlohmann::ordered_json energy_series = nlohmann::ordered_json::array();
    for (const FieldState& frame : traj.frames) {
        const SupNorms norms = sup_norms(frame, traj.speed);
        sup_series.push_back({{"t", frame.t}, {"sup_ut", norms.sup_ut}, {"sup_ux", norms.sup_ux}});
        energy_series.push_back({{"t", frame.t}, {"E", energy(frame, traj.grid, traj.speed)}});
    }
    j["sup_norm_series"] = std::move(sup_series);
    j["energy_series"] = std::move(energy_series);
    j["energy_conservation_applies"] = (traj.config.lambda == 1.0);
    if (!traj.frames.empty())
        j["riemann_consistency_final"] =
            riemann_consistency(traj.frames.back(), traj.grid, traj.speed);
    return j;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write JSON file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace rwl
