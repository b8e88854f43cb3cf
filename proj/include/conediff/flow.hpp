#pragma once

#include <string>
#include <vector>

#include "conediff/diagnostics.hpp"
#include "conediff/geometry.hpp"

namespace conediff {

// Solver parameters with all defaults resolved (no "auto" left).
struct FlowParams {
    int m = 1;                  // flow order: 2m+2 is the PDE order
    double t_end = 1.0;
    double dt0 = 1e-6;
    double dt_min = 1e-16;
    double dt_max = 1e-3;
    double tol_step = 1e-7;     // step-doubling error tolerance
    double rho_min = 1e-3;      // tip-reach threshold on endpoint ray parameter
    double k2_cap = 1e12;       // curvature blow-up threshold on ∫k^2 ds
    double tol_c = 1e-6;        // convergence: max |k - kbar|
    double tol_v = 1e-6;        // convergence: realized step speed
    double cfl_c = 0.0;         // >0: clamp dt <= cfl_c * ds_min^(2m+2)
    bool area_renorm = true;    // rescale about the tip to pin the enclosed area
    double remesh_ratio = 1.5;  // trigger for uniform-arclength remeshing
    int record_every = 1;
    int snapshot_every = 0;     // 0: only initial and final snapshots
};

struct FlowState {
    DiscreteCurve curve;
    double t = 0.0;
    double dt = 0.0;
    int m = 1;
    QuantityRecord cached;
};

struct TerminationStatus {
    enum class Kind { Converged, TipReach, CurvatureBlowup, TimeLimit, StepFloor };
    Kind kind = Kind::TimeLimit;
    double t_final = 0.0;
    std::string detail;
};

const char* to_string(TerminationStatus::Kind k);

// Normal speed (-1)^(m+1) k_{s^(2m)} per node, via iterated arclength
// differences of the curvature table with even boundary extension.
std::vector<double> normal_velocity(const DiscreteCurve& curve, int m);
std::vector<double> velocity_from_curvature_table(std::span<const double> k,
                                                  std::span<const double> s,
                                                  int m);

// Orthogonal projection of the endpoints onto their rays plus table rebuild
// with reflected ghosts.  Returns false (leaving `out` untouched aside from
// bookkeeping) when an endpoint ray parameter falls below rho_min.
bool apply_boundary(const DiscreteCurve& curve, const Cone& cone,
                    double rho_min, DiscreteCurve& out);

// Step-size controller: safety 0.9, growth cap 1.25, clamped to
// [dt_min, min(dt_max, cfl_c * ds_min^(2m+2))].
double adapt_dt(double dt, double error_estimate, const FlowParams& p,
                double ds_min);

// One linearly implicit update of the whole state (no controller): solves
// (I + dt (-1)^(m+1) D_{2m+2}) d = dt v nu on interleaved coordinates with
// ghost reflection folded into the matrix, then projects endpoints, then
// optionally restores the reference area by scaling about the tip.
// Returns false on tip reach.
bool flow_substep(const DiscreteCurve& curve, double dt, int m,
                  const FlowParams& p, double area_ref, DiscreteCurve& out);

// Controller-driven step: full step vs two half steps, accept/reject.
struct StepOutcome {
    bool accepted = false;
    bool tip_reach = false;
    bool solve_failed = false;
    double error = 0.0;
    double dt_used = 0.0;
    double dt_next = 0.0;
    double displacement = 0.0;  // max node movement of the accepted step
};

StepOutcome flow_step(FlowState& state, const FlowParams& p, double area_ref);

// Redistribute nodes to uniform arclength via monotone cubic interpolation;
// endpoints fixed; enclosed area restored by scaling when cone-built.
DiscreteCurve remesh(const DiscreteCurve& curve);

struct RunResult {
    std::vector<QuantityRecord> trajectory;
    std::vector<ResidualRecord> residuals;  // [i] between records i-1 and i
    std::vector<FlowState> snapshots;
    TerminationStatus termination;

    // Maxima over all accepted steps, with the times they occurred.
    double max_area_drift = 0.0;       // |A - A0| / A0
    double max_length_increase = 0.0;  // per-step increase of L
    double max_omega_drift = 0.0;      // |omega - omega0|
    double max_kosc_increase = 0.0;    // per-step increase of Kosc
    double max_bc_ks = 0.0;            // one-sided |k_s| at endpoints
    double max_bc_ks3 = 0.0;           // one-sided |k_sss| at endpoints (m=2)
    double t_area_drift = 0.0;
    double t_length_increase = 0.0;
    double t_omega_drift = 0.0;
    double t_kosc_increase = 0.0;
    double t_bc_ks = 0.0;
    double t_bc_ks3 = 0.0;
    long accepted = 0;
    long rejected = 0;
    long remeshes = 0;
};

RunResult run_flow(const DiscreteCurve& initial, const FlowParams& p);

}  // namespace conediff
