#include "rwl/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rwl/bounds.hpp"

namespace rwl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(unquote(value));
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = {
        {"speed.family", [](RunConfig& c, const std::string&, const std::string& v) { c.speed_family = unquote(v); }},
        {"speed.c0", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_c0 = parse_double(k, v); }},
        {"speed.delta", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_delta = parse_double(k, v); }},
        {"speed.c_minus", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_c_minus = parse_double(k, v); }},
        {"speed.c_plus", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_c_plus = parse_double(k, v); }},
        {"speed.sample_window", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_sample_window = parse_double(k, v); }},
        {"speed.sample_count", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed_sample_count = parse_int(k, v); }},
        {"data.kind", [](RunConfig& c, const std::string&, const std::string& v) { c.data_kind = unquote(v); }},
        {"data.amplitude", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_amplitude = parse_double(k, v); }},
        {"data.center", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_center = parse_double(k, v); }},
        {"data.width", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_width = parse_double(k, v); }},
        {"data.velocity_amplitude", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_velocity_amplitude = parse_double(k, v); }},
        {"data.slack", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_slack = parse_double(k, v); }},
        {"data.support_radius", [](RunConfig& c, const std::string& k, const std::string& v) { c.data_support_radius = parse_double(k, v); }},
        {"data.file", [](RunConfig& c, const std::string&, const std::string& v) { c.data_file = unquote(v); }},
        {"grid.x_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid_x_min = parse_double(k, v); }},
        {"grid.x_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid_x_max = parse_double(k, v); }},
        {"grid.n", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid_n = parse_int(k, v); }},
        {"solver.cfl", [](RunConfig& c, const std::string& k, const std::string& v) { c.solver_cfl = parse_double(k, v); }},
        {"solver.t_end", [](RunConfig& c, const std::string& k, const std::string& v) { c.solver_t_end = parse_double(k, v); }},
        {"solver.lambda", [](RunConfig& c, const std::string& k, const std::string& v) { c.solver_lambda = parse_double(k, v); }},
        {"solver.order", [](RunConfig& c, const std::string&, const std::string& v) { c.solver_order = unquote(v); }},
        {"solver.output_every", [](RunConfig& c, const std::string& k, const std::string& v) { c.solver_output_every = parse_int(k, v); }},
        {"solver.blow_threshold", [](RunConfig& c, const std::string& k, const std::string& v) { c.solver_blow_threshold = parse_double(k, v); }},
        {"certify.tol", [](RunConfig& c, const std::string& k, const std::string& v) { c.certify_tol = parse_double(k, v); }},
        {"trace.anchor_t", [](RunConfig& c, const std::string& k, const std::string& v) { c.trace_anchor_t = parse_double(k, v); }},
        {"trace.anchor_x", [](RunConfig& c, const std::string& k, const std::string& v) { c.trace_anchor_x = parse_double(k, v); }},
        {"trace.direction", [](RunConfig& c, const std::string&, const std::string& v) { c.trace_direction = unquote(v); }},
        {"trace.n_anchors_random", [](RunConfig& c, const std::string& k, const std::string& v) { c.trace_n_anchors_random = parse_int(k, v); }},
        {"trace.kappa", [](RunConfig& c, const std::string& k, const std::string& v) { c.trace_kappa = parse_double(k, v); }},
        {"sweep.lambdas", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep_lambdas = parse_double_list(k, v); }},
        {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int(k, v)); }},
        {"output_dir", [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = unquote(v); }},
    };
    return table;
}

} // namespace

void apply_override(RunConfig& rc, const std::string& key, const std::string& value) {
    const auto& table = key_table();
    const auto it = table.find(key);
    if (it == table.end())
        throw ConfigError("unknown config key '" + key + "'");
    it->second(rc, key, trim(value));
}

std::vector<std::string> known_config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, v] : key_table()) keys.push_back(k);
    return keys;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    RunConfig rc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        apply_override(rc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return rc;
}

WaveSpeed make_speed(const RunConfig& rc) {
    if (rc.speed_family == "tanh") return WaveSpeed::tanh_speed(rc.speed_c0, rc.speed_delta);
    if (rc.speed_family == "logistic")
        return WaveSpeed::logistic_speed(rc.speed_c_minus, rc.speed_c_plus);
    if (rc.speed_family == "arctan") return WaveSpeed::arctan_speed(rc.speed_c0, rc.speed_delta);
    if (rc.speed_family == "constant") return WaveSpeed::constant(rc.speed_c0);
    throw ConfigError("config key 'speed.family': unknown family '" + rc.speed_family +
                      "' (tanh|logistic|arctan|constant)");
}

Grid make_grid(const RunConfig& rc) { return Grid(rc.grid_x_min, rc.grid_x_max, rc.grid_n); }

InitialData make_data(const RunConfig& rc, const Grid& grid, const WaveSpeed& ws) {
    if (rc.data_kind == "gaussian") {
        return gaussian_bump(grid, rc.data_amplitude, rc.data_center, rc.data_width,
                             rc.data_velocity_amplitude, rc.data_support_radius);
    }
    if (rc.data_kind == "nonpositive") {
        const InitialData base =
            gaussian_bump(grid, rc.data_amplitude, rc.data_center, rc.data_width, 0.0,
                          rc.data_support_radius);
        return nonpositive_riemann_data(base, rc.data_slack, ws);
    }
    if (rc.data_kind == "file") {
        auto [file_grid, data] = load_initial_csv(rc.data_file);
        if (file_grid.n != grid.n || std::abs(file_grid.x_min - grid.x_min) > 1e-12 ||
            std::abs(file_grid.x_max - grid.x_max) > 1e-9)
            throw ConfigError("data.file grid does not match grid.* configuration");
        return data;
    }
    throw ConfigError("config key 'data.kind': unknown kind '" + rc.data_kind +
                      "' (gaussian|nonpositive|file)");
}

SolverConfig make_solver_config(const RunConfig& rc) {
    SolverConfig sc;
    sc.cfl = rc.solver_cfl;
    sc.t_end = rc.solver_t_end;
    sc.lambda = rc.solver_lambda;
    sc.output_every = rc.solver_output_every;
    sc.blow_threshold = rc.solver_blow_threshold;
    if (rc.solver_order == "upwind1")
        sc.order = SchemeOrder::Upwind1;
    else if (rc.solver_order == "muscl2")
        sc.order = SchemeOrder::Muscl2;
    else
        throw ConfigError("config key 'solver.order': unknown order '" + rc.solver_order +
                          "' (upwind1|muscl2)");
    if (!(sc.lambda >= 0.0 && sc.lambda <= 2.0))
        throw ConfigError("config key 'solver.lambda': must lie in [0,2]");
    if (!(sc.cfl > 0.0 && sc.cfl < 1.0))
        throw ConfigError("config key 'solver.cfl': must lie in (0,1)");
    return sc;
}

double resolved_certify_tol(const RunConfig& rc) {
    if (rc.certify_tol > 0.0) return rc.certify_tol;
    const Grid grid = make_grid(rc);
    return default_certificate_tol(grid.dx());
}

nlohmann::ordered_json config_json(const RunConfig& rc) {
    nlohmann::ordered_json j;
    j["speed.family"] = rc.speed_family;
    j["speed.c0"] = rc.speed_c0;
    j["speed.delta"] = rc.speed_delta;
    j["speed.c_minus"] = rc.speed_c_minus;
    j["speed.c_plus"] = rc.speed_c_plus;
    j["speed.sample_window"] = rc.speed_sample_window;
    j["speed.sample_count"] = rc.speed_sample_count;
    j["data.kind"] = rc.data_kind;
    j["data.amplitude"] = rc.data_amplitude;
    j["data.center"] = rc.data_center;
    j["data.width"] = rc.data_width;
    j["data.velocity_amplitude"] = rc.data_velocity_amplitude;
    j["data.slack"] = rc.data_slack;
    j["data.support_radius"] = rc.data_support_radius;
    j["data.file"] = rc.data_file;
    j["grid.x_min"] = rc.grid_x_min;
    j["grid.x_max"] = rc.grid_x_max;
    j["grid.n"] = rc.grid_n;
    j["solver.cfl"] = rc.solver_cfl;
    j["solver.t_end"] = rc.solver_t_end;
    j["solver.lambda"] = rc.solver_lambda;
    j["solver.order"] = rc.solver_order;
    j["solver.output_every"] = rc.solver_output_every;
    j["solver.blow_threshold"] = rc.solver_blow_threshold;
    j["certify.tol"] = rc.certify_tol;
    j["trace.anchor_t"] = rc.trace_anchor_t;
    j["trace.anchor_x"] = rc.trace_anchor_x;
    j["trace.direction"] = rc.trace_direction;
    j["trace.n_anchors_random"] = rc.trace_n_anchors_random;
    j["trace.kappa"] = rc.trace_kappa;
    j["sweep.lambdas"] = rc.sweep_lambdas;
    j["seed"] = rc.seed;
    j["output_dir"] = rc.output_dir;
    return j;
}

} // namespace rwl
