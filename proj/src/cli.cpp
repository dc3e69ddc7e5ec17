#include "rwl/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rwl/bounds.hpp"
#include "rwl/characteristics.hpp"
#include "rwl/config.hpp"
#include "rwl/diagnostics.hpp"
#include "rwl/io.hpp"
#include "rwl/oracles.hpp"

namespace rwl::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

struct CommonOpts {
    std::string config_file;
    std::vector<std::string> overrides;  // key=value
    std::string output_dir;              // flag override
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "run configuration file (key = value lines)");
    cmd->add_option("-D,--set", opts.overrides, "override a config key, e.g. -D solver.t_end=5");
    cmd->add_option("--output-dir", opts.output_dir, "output directory");
}

RunConfig resolve_config(const CommonOpts& opts) {
    RunConfig rc;
    if (!opts.config_file.empty()) rc = parse_config_file(opts.config_file);
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must look like key=value: '" + kv + "'");
        apply_override(rc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (const char* env = std::getenv("RWL_OUTPUT_DIR"); env && *env) rc.output_dir = env;
    if (!opts.output_dir.empty()) rc.output_dir = opts.output_dir;
    return rc;
}

struct Pipeline {
    WaveSpeed ws;
    Grid grid;
    InitialData data;
    SolverConfig solver;
};

Pipeline build_pipeline(const RunConfig& rc) {
    WaveSpeed ws = make_speed(rc);
    Grid grid = make_grid(rc);
    InitialData data = make_data(rc, grid, ws);
    return Pipeline{std::move(ws), grid, std::move(data), make_solver_config(rc)};
}

/// Simulate + certificate + blow-up report; shared by simulate/certify/sweep.
struct RunResult {
    Trajectory traj;
    BoundCertificate cert;
    BlowUpReport blow;
};

RunResult execute_run(const RunConfig& rc, const Pipeline& pipe) {
    RunResult result{simulate(pipe.data, pipe.grid, pipe.ws, pipe.solver), {}, {}};
    auto [R0, S0] = initial_riemann(pipe.data, pipe.ws);
    const BoundConstants constants = bound_constants(R0, S0, pipe.ws);
    result.cert = certify(result.traj, constants, resolved_certify_tol(rc));
    result.blow = detect_blowup(result.traj, pipe.solver.blow_threshold);
    return result;
}

int exit_code_for(const RunResult& result) {
    if (result.blow.detected || result.traj.blow) return kExitBlowUp;
    if (result.cert.applicable && !result.cert.pass) return kExitCertFail;
    return kExitOk;
}

void write_run_outputs(const RunConfig& rc, const RunResult& result, const std::string& dir,
                       bool with_frames) {
    fs::create_directories(dir);
    if (with_frames) write_trajectory_frames(dir + "/frames", result.traj);
    nlohmann::ordered_json summary = trajectory_summary_json(result.traj);
    summary["blowup"] = blowup_json(result.blow, result.traj.config.blow_threshold);
    summary["certificate"] = certificate_json(result.cert);
    summary["config"] = config_json(rc);
    write_json(dir + "/summary.json", summary);
}

int cmd_simulate(const RunConfig& rc) {
    const Pipeline pipe = build_pipeline(rc);
    const RunResult result = execute_run(rc, pipe);
    write_run_outputs(rc, result, rc.output_dir, /*with_frames=*/true);
    for (const auto& w : result.traj.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "simulate: " << result.traj.frames.size() << " frames, t_final="
              << result.traj.frames.back().t << (result.blow.detected ? " [blow-up]" : "")
              << '\n';
    return exit_code_for(result);
}

int cmd_certify(const RunConfig& rc) {
    const Pipeline pipe = build_pipeline(rc);
    const RunResult result = execute_run(rc, pipe);
    fs::create_directories(rc.output_dir);
    nlohmann::ordered_json j = certificate_json(result.cert);
    j["config"] = config_json(rc);
    write_json(rc.output_dir + "/certificate.json", j);
    write_run_outputs(rc, result, rc.output_dir, /*with_frames=*/false);
    std::cout << "certify: P=" << result.cert.constants.P << " m0=" << result.cert.constants.m0
              << " A=" << result.cert.constants.A << " tol=" << result.cert.tol << " verdict="
              << (result.cert.pass ? "pass" : "fail")
              << (result.cert.applicable ? "" : " (non-applicable: lambda != 0)") << '\n';
    return exit_code_for(result);
}

int cmd_trace(const RunConfig& rc) {
    const Pipeline pipe = build_pipeline(rc);
    const Trajectory traj = simulate(pipe.data, pipe.grid, pipe.ws, pipe.solver);
    fs::create_directories(rc.output_dir);

    const bool minus = rc.trace_direction == "minus";
    if (!minus && rc.trace_direction != "plus")
        throw ConfigError("config key 'trace.direction': expected plus|minus");
    if (const auto spacing = frame_spacing_warning(traj))
        std::cerr << "warning: " << *spacing << '\n';
    const CharDirection dir = minus ? CharDirection::Minus : CharDirection::Plus;
    const double tol_rate = monotonicity_tolerance(traj, rc.trace_kappa);
    const bool lambda0 = pipe.solver.lambda == 0.0;

    std::vector<std::pair<double, double>> anchors;
    if (rc.trace_n_anchors_random > 0) {
        anchors = random_anchors(traj, rc.trace_n_anchors_random, rc.seed);
    } else {
        const double t = rc.trace_anchor_t >= 0.0 ? rc.trace_anchor_t : traj.frames.back().t;
        anchors.emplace_back(t, rc.trace_anchor_x);
    }

    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    bool all_pass = true;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        const CharacteristicCurve curve = trace(traj, anchors[k].first, anchors[k].second, dir);
        char name[32];
        std::snprintf(name, sizeof name, "trace_%03zu.csv", k);
        write_trace_csv(rc.output_dir + "/" + std::string(name), curve);
        const MonotonicityReport rep = weighted_monotonicity_report(curve, tol_rate, lambda0);
        all_pass = all_pass && (rep.pass || !rep.applicable);
        reports.push_back({{"anchor_t", anchors[k].first},
                           {"anchor_x", anchors[k].second},
                           {"direction", minus ? "minus" : "plus"},
                           {"file", name},
                           {"max_increase_rate", rep.max_increase_rate},
                           {"tol_rate", rep.tol_rate},
                           {"pass", rep.pass},
                           {"applicable", rep.applicable}});
    }
    nlohmann::ordered_json j;
    j["traces"] = std::move(reports);
    j["config"] = config_json(rc);
    write_json(rc.output_dir + "/trace_report.json", j);
    std::cout << "trace: " << anchors.size() << " curve(s), monotonicity "
              << (all_pass ? "pass" : "fail") << '\n';
    return all_pass ? kExitOk : kExitCertFail;
}

int cmd_convergence(const RunConfig& rc, const std::vector<int>& ns,
                    const std::vector<std::string>& orders) {
    if (rc.speed_family != "constant")
        throw ConfigError("convergence requires speed.family = constant "
                          "(errors are measured against the exact constant-speed solution)");
    if (ns.size() < 2)
        throw ConfigError("convergence needs at least two grid sizes");

    const double c = rc.speed_c0;
    const double t_end = rc.solver_t_end;

    struct Job {
        std::string order;
        int n;
    };
    std::vector<Job> jobs;
    for (const auto& order : orders)
        for (int n : ns) jobs.push_back({order, n});

    std::vector<std::future<double>> errors(jobs.size());
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        errors[k] = std::async(std::launch::async, [&, k]() {
            RunConfig jrc = rc;
            jrc.grid_n = jobs[k].n;
            jrc.solver_order = jobs[k].order;
            const Pipeline pipe = build_pipeline(jrc);
            if (!pipe.data.u0_fn || !pipe.data.u1_fn)
                throw ConfigError("convergence requires generated data (data.kind = gaussian)");
            const Trajectory traj = simulate(pipe.data, pipe.grid, pipe.ws, pipe.solver);
            const LinearWaveOracle oracle(c, pipe.data.u0_fn, pipe.data.u1_fn,
                                          pipe.grid.x_min - c * t_end - 1.0,
                                          pipe.grid.x_max + c * t_end + 1.0, jrc.data_width);
            const FieldState& last = traj.frames.back();
            double l1 = 0.0;
            const double dx = pipe.grid.dx();
            for (int i = 0; i < pipe.grid.n; ++i) {
                const double x = pipe.grid.x_min + i * dx;
                l1 += std::abs(last.u[i] - oracle(last.t, x)) * dx;
            }
            return l1;
        });
    }

    fs::create_directories(rc.output_dir);
    std::ofstream csv(rc.output_dir + "/convergence.csv");
    csv << "order,n,l1_error,ratio\n";
    nlohmann::ordered_json j;
    nlohmann::ordered_json tables = nlohmann::ordered_json::array();
    std::size_t k = 0;
    for (const auto& order : orders) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        double prev = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i, ++k) {
            const double err = errors[k].get();
            const double ratio = i > 0 ? prev / err : 0.0;
            csv << order << ',' << ns[i] << ',' << format_double(err) << ','
                << (i > 0 ? format_double(ratio) : "") << '\n';
            rows.push_back({{"n", ns[i]}, {"l1_error", err},
                            {"ratio", i > 0 ? nlohmann::ordered_json(ratio)
                                            : nlohmann::ordered_json(nullptr)}});
            std::cout << "convergence " << order << " n=" << ns[i] << " L1=" << err
                      << (i > 0 ? " ratio=" + std::to_string(ratio) : "") << '\n';
            prev = err;
        }
        tables.push_back({{"order", order}, {"rows", rows}});
    }
    j["tables"] = std::move(tables);
    j["config"] = config_json(rc);
    write_json(rc.output_dir + "/convergence.json", j);
    return kExitOk;
}

int cmd_sweep(const RunConfig& rc, std::vector<double> lambdas) {
    if (lambdas.empty()) lambdas = rc.sweep_lambdas;
    if (lambdas.empty())
        throw ConfigError("sweep needs --lambdas or sweep.lambdas");
    std::sort(lambdas.begin(), lambdas.end());

    struct JobOut {
        double lambda;
        int exit_code;
        bool cert_pass;
        bool cert_applicable;
        bool blow_detected;
        double t_final;
    };
    std::vector<std::future<JobOut>> futures;
    for (double lambda : lambdas) {
        futures.push_back(std::async(std::launch::async, [&rc, lambda]() {
            RunConfig jrc = rc;
            jrc.solver_lambda = lambda;
            std::ostringstream dir;
            dir << rc.output_dir << "/lambda_" << lambda;
            jrc.output_dir = dir.str();
            const Pipeline pipe = build_pipeline(jrc);
            const RunResult result = execute_run(jrc, pipe);
            write_run_outputs(jrc, result, jrc.output_dir, /*with_frames=*/false);
            return JobOut{lambda, exit_code_for(result), result.cert.pass,
                          result.cert.applicable, result.blow.detected,
                          result.traj.frames.back().t};
        }));
    }

    nlohmann::ordered_json jobs = nlohmann::ordered_json::array();
    int worst = kExitOk;
    auto severity = [](int code) { return code == kExitBlowUp ? 3 : code; };
    for (auto& f : futures) {
        const JobOut out = f.get();
        jobs.push_back({{"lambda", out.lambda},
                        {"exit_code", out.exit_code},
                        {"certificate_pass", out.cert_pass},
                        {"certificate_applicable", out.cert_applicable},
                        {"blowup_detected", out.blow_detected},
                        {"t_final", out.t_final}});
        std::cout << "sweep lambda=" << out.lambda << " exit=" << out.exit_code
                  << (out.blow_detected ? " [blow-up]" : "") << '\n';
        if (severity(out.exit_code) > severity(worst)) worst = out.exit_code;
    }
    fs::create_directories(rc.output_dir);
    nlohmann::ordered_json j;
    j["jobs"] = std::move(jobs);
    j["config"] = config_json(rc);
    write_json(rc.output_dir + "/sweep.json", j);
    return worst;
}

int cmd_energy_check(const RunConfig& rc) {
    const Pipeline pipe = build_pipeline(rc);
    const Trajectory traj = simulate(pipe.data, pipe.grid, pipe.ws, pipe.solver);
    const double e0 = energy(traj.frames.front(), pipe.grid, pipe.ws);
    const double eT = energy(traj.frames.back(), pipe.grid, pipe.ws);
    double worst = 0.0;
    for (const FieldState& frame : traj.frames)
        worst = std::max(worst, std::abs(energy(frame, pipe.grid, pipe.ws) - e0));
    const double drift = e0 > 0.0 ? std::abs(eT - e0) / e0 : 0.0;
    const double worst_drift = e0 > 0.0 ? worst / e0 : 0.0;

    fs::create_directories(rc.output_dir);
    nlohmann::ordered_json j;
    j["E0"] = e0;
    j["E_final"] = eT;
    j["relative_drift_final"] = drift;
    j["relative_drift_worst"] = worst_drift;
    j["conservation_applies"] = (pipe.solver.lambda == 1.0);
    j["summary"] = trajectory_summary_json(traj);
    j["config"] = config_json(rc);
    write_json(rc.output_dir + "/energy.json", j);
    std::cout << "energy-check: E0=" << e0 << " E(T)=" << eT << " drift=" << drift
              << (pipe.solver.lambda == 1.0 ? "" : " (lambda != 1: not a conserved quantity)")
              << '\n';
    return traj.blow ? kExitBlowUp : kExitOk;
}

int cmd_validate_speed(const RunConfig& rc) {
    const WaveSpeed ws = make_speed(rc);
    const ValidationReport report =
        validate(ws, -rc.speed_sample_window, rc.speed_sample_window, rc.speed_sample_count);
    std::cout << "validate-speed: " << ws.describe() << '\n';
    std::cout << "  checked " << report.checked << " samples: "
              << (report.pass ? "pass" : "FAIL") << '\n';
    for (const auto& v : report.violations) std::cout << "  " << v.describe() << '\n';
    if (report.violation_count > report.violations.size())
        std::cout << "  ... and " << (report.violation_count - report.violations.size())
                  << " more\n";
    return report.pass ? kExitOk : kExitCertFail;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"rwl: quasilinear wave lab (Riemann variables, upwind transport, "
                 "a priori bound certification)"};
    app.require_subcommand(1);

    CommonOpts sim_opts, cert_opts, trace_opts, conv_opts, sweep_opts, energy_opts, speed_opts;

    CLI::App* sim = app.add_subcommand("simulate", "advance the system and write frames");
    add_common(sim, sim_opts);

    CLI::App* cert = app.add_subcommand("certify", "certify the a priori sandwich bound");
    add_common(cert, cert_opts);
    double cert_tol = -1.0;
    cert->add_option("--tol", cert_tol, "certification tolerance (default max(1e-8, 10*dx))");

    CLI::App* trc = app.add_subcommand("trace", "trace characteristic curves");
    add_common(trc, trace_opts);
    double anchor_t = -1.0, anchor_x = 0.0, kappa = -1.0;
    std::string direction;
    int n_random = -1;
    trc->add_option("--anchor-t", anchor_t, "anchor time");
    trc->add_option("--anchor-x", anchor_x, "anchor position");
    trc->add_option("--direction", direction, "plus|minus");
    trc->add_option("--n-anchors-random", n_random, "number of random anchors");
    trc->add_option("--kappa", kappa, "monotonicity tolerance factor");

    CLI::App* conv = app.add_subcommand("convergence", "grid refinement study vs exact solution");
    add_common(conv, conv_opts);
    std::string ns_list = "1000,2000,4000";
    std::string orders_list = "upwind1,muscl2";
    conv->add_option("--ns", ns_list, "comma-separated grid sizes");
    conv->add_option("--orders", orders_list, "comma-separated schemes");

    CLI::App* swp = app.add_subcommand("sweep", "run several lambda values in parallel");
    add_common(swp, sweep_opts);
    std::string lambdas_list;
    swp->add_option("--lambdas", lambdas_list, "comma-separated lambda values");

    CLI::App* energy = app.add_subcommand("energy-check", "energy drift of a run");
    add_common(energy, energy_opts);

    CLI::App* vspeed = app.add_subcommand("validate-speed", "check wave-speed assumptions");
    add_common(vspeed, speed_opts);

    std::vector<const char*> argv;
    argv.push_back("rwl");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(resolve_config(sim_opts));
        if (cert->parsed()) {
            RunConfig rc = resolve_config(cert_opts);
            if (cert_tol > 0.0) rc.certify_tol = cert_tol;
            return cmd_certify(rc);
        }
        if (trc->parsed()) {
            RunConfig rc = resolve_config(trace_opts);
            if (anchor_t >= 0.0) rc.trace_anchor_t = anchor_t;
            if (trc->count("--anchor-x") > 0) rc.trace_anchor_x = anchor_x;
            if (!direction.empty()) rc.trace_direction = direction;
            if (n_random >= 0) rc.trace_n_anchors_random = n_random;
            if (kappa > 0.0) rc.trace_kappa = kappa;
            return cmd_trace(rc);
        }
        if (conv->parsed()) {
            RunConfig rc = resolve_config(conv_opts);
            std::vector<int> ns;
            for (double v : parse_list(ns_list)) ns.push_back(static_cast<int>(v));
            std::vector<std::string> orders;
            std::istringstream os(orders_list);
            std::string item;
            while (std::getline(os, item, ',')) {
                if (!item.empty()) orders.push_back(item);
            }
            return cmd_convergence(rc, ns, orders);
        }
        if (swp->parsed()) {
            RunConfig rc = resolve_config(sweep_opts);
            return cmd_sweep(rc, parse_list(lambdas_list));
        }
        if (energy->parsed()) return cmd_energy_check(resolve_config(energy_opts));
        if (vspeed->parsed()) return cmd_validate_speed(resolve_config(speed_opts));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace rwl::cli
