#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conediff/flow.hpp"
#include "conediff/geometry.hpp"

namespace conediff {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed experiment description.  Doubles left as NaN mean "auto": they are
// resolved against the initial curve in prepare().
struct RunConfig {
    // cone
    double theta1 = 0.0;
    double theta2 = 0.0;

    // init
    enum class InitType { Arc, Perturbed, File };
    InitType init_type = InitType::Arc;
    double init_radius = 0.0;  // 0 = unset
    double init_area = 0.0;    // 0 = unset
    std::vector<std::pair<int, double>> init_modes;
    std::string init_path;

    // flow
    int m = 1;
    int n_segments = 200;
    double t_end = 0.0;
    double dt0 = nan_auto();
    double dt_min = nan_auto();
    double dt_max = nan_auto();
    double tol_step = 1e-7;
    double rho_min = nan_auto();
    double k2_cap = nan_auto();
    double tol_c = nan_auto();
    double tol_v = nan_auto();
    double cfl_c = 0.0;
    bool area_renorm = true;
    double remesh_ratio = 1.5;

    // output
    std::string out_dir = "out";
    int record_every = 1;
    int snapshot_every = 0;
    int svg_every = 0;

    // checks
    double tol_A = 1e-6;
    double tol_L = nan_auto();     // auto: 1e-9 * L0
    double tol_omega = 1e-6;
    double tol_mono = 1e-8;        // relative to Kosc(0)
    bool enable_bounds = true;
    double bounds_tol = 1e-2;
    double bc_tol = nan_auto();    // auto: scale-aware boundary-flux ceiling

    static double nan_auto() { return std::numeric_limits<double>::quiet_NaN(); }
};

// Flat dotted-key "key = value" text with '#' comments.  Unknown keys,
// duplicate keys, type mismatches and constraint violations are rejected
// with the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Replace one key of an already-parsed config (used by sweep).
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Thresholds for the trajectory audit.
struct CheckTolerances {
    double tol_A = 1e-6;
    double tol_L = 0.0;        // absolute per-step length increase
    double tol_omega = 1e-6;
    double tol_mono = 1e-8;    // relative to Kosc(0)
    bool enable_bounds = true;
    double bounds_tol = 1e-2;
    double bc_tol = 0.0;       // absolute one-sided |k_s| ceiling
    double margin_floor = 0.1; // assert Kosc monotone only above this margin
    double kosc_abs_floor = 1e-18;  // round-off allowance for Kosc ~ 0
};

// Initial curve plus fully resolved parameters.
struct PreparedRun {
    Cone cone;
    DiscreteCurve initial;
    FlowParams params;
    CheckTolerances checks;
    std::string out_dir;
    int svg_every = 0;
};

PreparedRun prepare(const RunConfig& cfg);

}  // namespace conediff
