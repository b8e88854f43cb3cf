#include "conediff/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "conediff/initgen.hpp"
#include "conediff/io.hpp"

namespace conediff {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    if (v == "auto") return RunConfig::nan_auto();
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || v.empty())
        fail(line, "type mismatch for key '" + key + "': expected number, got '" +
                       v + "'");
    return x;
}

int parse_int(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || v.empty())
        fail(line, "type mismatch for key '" + key +
                       "': expected integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "on" || v == "true") return true;
    if (v == "off" || v == "false") return false;
    fail(line, "type mismatch for key '" + key +
                   "': expected on/off/true/false, got '" + v + "'");
}

// "j:eps" pairs separated by ';'.
std::vector<std::pair<int, double>> parse_modes(const std::string& v,
                                                const std::string& key,
                                                int line) {
    std::vector<std::pair<int, double>> modes;
    if (trim(v).empty()) return modes;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            fail(line, "type mismatch for key '" + key +
                           "': expected j:eps pairs separated by ';'");
        modes.emplace_back(parse_int(trim(item.substr(0, colon)), key, line),
                           parse_double(trim(item.substr(colon + 1)), key, line));
    }
    return modes;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"cone.theta1", [](RunConfig& c, const std::string& v, int l) { c.theta1 = parse_double(v, "cone.theta1", l); }},
        {"cone.theta2", [](RunConfig& c, const std::string& v, int l) { c.theta2 = parse_double(v, "cone.theta2", l); }},
        {"init.type",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "arc") c.init_type = RunConfig::InitType::Arc;
             else if (v == "perturbed") c.init_type = RunConfig::InitType::Perturbed;
             else if (v == "file") c.init_type = RunConfig::InitType::File;
             else fail(l, "type mismatch for key 'init.type': expected arc|perturbed|file, got '" + v + "'");
         }},
        {"init.radius", [](RunConfig& c, const std::string& v, int l) { c.init_radius = parse_double(v, "init.radius", l); }},
        {"init.area", [](RunConfig& c, const std::string& v, int l) { c.init_area = parse_double(v, "init.area", l); }},
        {"init.modes", [](RunConfig& c, const std::string& v, int l) { c.init_modes = parse_modes(v, "init.modes", l); }},
        {"init.path", [](RunConfig& c, const std::string& v, int) { c.init_path = v; }},
        {"flow.m", [](RunConfig& c, const std::string& v, int l) { c.m = parse_int(v, "flow.m", l); }},
        {"flow.N", [](RunConfig& c, const std::string& v, int l) { c.n_segments = parse_int(v, "flow.N", l); }},
        {"flow.t_end", [](RunConfig& c, const std::string& v, int l) { c.t_end = parse_double(v, "flow.t_end", l); }},
        {"flow.dt0", [](RunConfig& c, const std::string& v, int l) { c.dt0 = parse_double(v, "flow.dt0", l); }},
        {"flow.dt_min", [](RunConfig& c, const std::string& v, int l) { c.dt_min = parse_double(v, "flow.dt_min", l); }},
        {"flow.dt_max", [](RunConfig& c, const std::string& v, int l) { c.dt_max = parse_double(v, "flow.dt_max", l); }},
        {"flow.tol_step", [](RunConfig& c, const std::string& v, int l) { c.tol_step = parse_double(v, "flow.tol_step", l); }},
        {"flow.rho_min", [](RunConfig& c, const std::string& v, int l) { c.rho_min = parse_double(v, "flow.rho_min", l); }},
        {"flow.k2_cap", [](RunConfig& c, const std::string& v, int l) { c.k2_cap = parse_double(v, "flow.k2_cap", l); }},
        {"flow.tol_c", [](RunConfig& c, const std::string& v, int l) { c.tol_c = parse_double(v, "flow.tol_c", l); }},
        {"flow.tol_v", [](RunConfig& c, const std::string& v, int l) { c.tol_v = parse_double(v, "flow.tol_v", l); }},
        {"flow.cfl_c", [](RunConfig& c, const std::string& v, int l) { c.cfl_c = parse_double(v, "flow.cfl_c", l); }},
        {"flow.area_renorm", [](RunConfig& c, const std::string& v, int l) { c.area_renorm = parse_bool(v, "flow.area_renorm", l); }},
        {"flow.remesh_ratio", [](RunConfig& c, const std::string& v, int l) { c.remesh_ratio = parse_double(v, "flow.remesh_ratio", l); }},
        {"output.dir", [](RunConfig& c, const std::string& v, int) { c.out_dir = v; }},
        {"output.record_every", [](RunConfig& c, const std::string& v, int l) { c.record_every = parse_int(v, "output.record_every", l); }},
        {"output.snapshot_every", [](RunConfig& c, const std::string& v, int l) { c.snapshot_every = parse_int(v, "output.snapshot_every", l); }},
        {"output.svg_every", [](RunConfig& c, const std::string& v, int l) { c.svg_every = parse_int(v, "output.svg_every", l); }},
        {"checks.tol_A", [](RunConfig& c, const std::string& v, int l) { c.tol_A = parse_double(v, "checks.tol_A", l); }},
        {"checks.tol_L", [](RunConfig& c, const std::string& v, int l) { c.tol_L = parse_double(v, "checks.tol_L", l); }},
        {"checks.tol_omega", [](RunConfig& c, const std::string& v, int l) { c.tol_omega = parse_double(v, "checks.tol_omega", l); }},
        {"checks.tol_mono", [](RunConfig& c, const std::string& v, int l) { c.tol_mono = parse_double(v, "checks.tol_mono", l); }},
        {"checks.enable_bounds", [](RunConfig& c, const std::string& v, int l) { c.enable_bounds = parse_bool(v, "checks.enable_bounds", l); }},
        {"checks.bounds_tol", [](RunConfig& c, const std::string& v, int l) { c.bounds_tol = parse_double(v, "checks.bounds_tol", l); }},
        {"checks.bc_tol", [](RunConfig& c, const std::string& v, int l) { c.bc_tol = parse_double(v, "checks.bc_tol", l); }},
    };
    return table;
}

void validate(const RunConfig& cfg, int theta_line) {
    // Construction validates the angle constraints.
    try {
        Cone cone(cfg.theta1, cfg.theta2);
    } catch (const GeometryError& e) {
        fail(theta_line, std::string("constraint violation: ") + e.what());
    }
    const auto positive = [](double v, const char* name) {
        if (!std::isnan(v) && !(v > 0.0))
            throw ConfigError(std::string("constraint violation: ") + name +
                              " must be positive");
    };
    positive(cfg.tol_step, "flow.tol_step");
    positive(cfg.tol_A, "checks.tol_A");
    positive(cfg.tol_L, "checks.tol_L");
    positive(cfg.tol_omega, "checks.tol_omega");
    positive(cfg.tol_mono, "checks.tol_mono");
    positive(cfg.bounds_tol, "checks.bounds_tol");
    positive(cfg.bc_tol, "checks.bc_tol");
    positive(cfg.dt0, "flow.dt0");
    positive(cfg.dt_min, "flow.dt_min");
    positive(cfg.dt_max, "flow.dt_max");
    positive(cfg.rho_min, "flow.rho_min");
    positive(cfg.k2_cap, "flow.k2_cap");
    if (cfg.m < 1) throw ConfigError("constraint violation: flow.m must be >= 1");
    if (cfg.n_segments < 8)
        throw ConfigError("constraint violation: flow.N must be >= 8");
    if (cfg.t_end < 0.0)
        throw ConfigError("constraint violation: flow.t_end must be >= 0");
    if (cfg.record_every < 1)
        throw ConfigError("constraint violation: output.record_every must be >= 1");
    if (!(cfg.remesh_ratio > 1.0))
        throw ConfigError("constraint violation: flow.remesh_ratio must be > 1");

    switch (cfg.init_type) {
        case RunConfig::InitType::Arc:
        case RunConfig::InitType::Perturbed:
            if ((cfg.init_radius > 0.0) == (cfg.init_area > 0.0))
                throw ConfigError(
                    "constraint violation: exactly one of init.radius or "
                    "init.area is required");
            break;
        case RunConfig::InitType::File:
            if (cfg.init_path.empty())
                throw ConfigError(
                    "constraint violation: init.path is required for "
                    "init.type = file");
            break;
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> seen;       // key -> first line
    std::map<std::string, int> required = {
        {"cone.theta1", 0}, {"cone.theta2", 0}, {"init.type", 0},
        {"flow.t_end", 0}};
    int theta_line = 0;

    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'key = value', got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) fail(line, "unknown key '" + key + "'");
        if (const auto prev = seen.find(key); prev != seen.end())
            fail(line, "duplicate key '" + key + "' (first set at line " +
                           std::to_string(prev->second) + ")");
        seen[key] = line;
        if (key == "cone.theta1" || key == "cone.theta2") theta_line = line;
        it->second(cfg, value, line);
        required.erase(key);
    }
    if (!required.empty())
        throw ConfigError("missing required key '" + required.begin()->first +
                          "'");
    validate(cfg, theta_line);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown key '" + key + "' in override");
    it->second(cfg, trim(value), 0);
}

PreparedRun prepare(const RunConfig& cfg) {
    const Cone cone(cfg.theta1, cfg.theta2);
    DiscreteCurve initial;
    switch (cfg.init_type) {
        case RunConfig::InitType::Arc: {
            const ArcSpec spec = cfg.init_radius > 0.0
                                     ? ArcSpec::with_radius(cone, cfg.init_radius)
                                     : ArcSpec::with_area(cone, cfg.init_area);
            initial = make_arc(spec, cfg.n_segments);
            break;
        }
        case RunConfig::InitType::Perturbed: {
            PerturbationSpec spec;
            spec.base_radius =
                cfg.init_radius > 0.0
                    ? cfg.init_radius
                    : std::sqrt(2.0 * cfg.init_area / cone.opening());
            spec.modes = cfg.init_modes;
            initial = perturbed_arc(cone, spec, cfg.n_segments);
            break;
        }
        case RunConfig::InitType::File: {
            const Snapshot snap = read_snapshot_file(cfg.init_path);
            std::vector<Vec2> nodes(snap.x.size());
            for (std::size_t i = 0; i < nodes.size(); ++i)
                nodes[i] = Vec2{snap.x[i], snap.y[i]};
            initial = build_tables(std::move(nodes), cone);
            break;
        }
    }

    const double l0 = initial.length();
    const double a0 = area(initial);
    const double w0 = rotation_number(initial);
    const double k0 = oscillation_of_curvature(initial);
    const double kbar0 = average_curvature(initial);
    const double phi = cone.opening();
    const double tscale = std::pow(l0, 2.0 * cfg.m + 2.0);
    const double ds = l0 / cfg.n_segments;

    PreparedRun run{cone, std::move(initial), {}, {}, cfg.out_dir, cfg.svg_every};
    FlowParams& p = run.params;
    p.m = cfg.m;
    p.t_end = cfg.t_end;
    p.dt_max = std::isnan(cfg.dt_max) ? 1e-3 * tscale : cfg.dt_max;
    p.dt0 = std::isnan(cfg.dt0) ? 1e-6 * tscale : cfg.dt0;
    p.dt_min = std::isnan(cfg.dt_min) ? 1e-13 * tscale : cfg.dt_min;
    p.tol_step = cfg.tol_step;
    p.rho_min = std::isnan(cfg.rho_min) ? 1e-3 * l0 : cfg.rho_min;
    p.k2_cap = std::isnan(cfg.k2_cap)
                   ? 1e4 * (k0 + 4.0 * std::pow(std::numbers::pi * w0, 2)) /
                         std::sqrt(2.0 * a0 * phi)
                   : cfg.k2_cap;
    p.tol_c = std::isnan(cfg.tol_c) ? 1e-6 * kbar0 : cfg.tol_c;
    p.tol_v = std::isnan(cfg.tol_v)
                  ? p.tol_c * std::pow(std::numbers::pi / l0, 2.0 * cfg.m)
                  : cfg.tol_v;
    p.cfl_c = cfg.cfl_c;
    p.area_renorm = cfg.area_renorm;
    p.remesh_ratio = cfg.remesh_ratio;
    p.record_every = cfg.record_every;
    p.snapshot_every = cfg.snapshot_every;

    CheckTolerances& t = run.checks;
    t.tol_A = cfg.tol_A;
    t.tol_L = std::isnan(cfg.tol_L) ? 1e-9 * l0 : cfg.tol_L;
    t.tol_omega = cfg.tol_omega;
    t.tol_mono = cfg.tol_mono;
    t.enable_bounds = cfg.enable_bounds;
    t.bounds_tol = cfg.bounds_tol;
    t.bc_tol = std::isnan(cfg.bc_tol)
                   ? 100.0 * ds * ds * std::max(kbar0, 1.0 / l0) / (l0 * l0)
                   : cfg.bc_tol;
    return run;
}

}  // namespace conediff
