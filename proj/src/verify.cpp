#include "conediff/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace conediff {

namespace {

const char* status_str(VerifyLine::Status s) {
    switch (s) {
        case VerifyLine::Status::Pass: return "PASS";
        case VerifyLine::Status::Fail: return "FAIL";
        case VerifyLine::Status::Info: return "INFO";
    }
    return "?";
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string VerifyReport::text() const {
    std::ostringstream os;
    for (const VerifyLine& l : lines)
        os << "check=" << l.name << " status=" << status_str(l.status)
           << " worst=" << num(l.worst) << " t=" << num(l.t_worst) << '\n';
    return os.str();
}

VerifyReport verify_trajectory(const RunResult& result,
                               const CheckTolerances& tol) {
    VerifyReport rep;
    const QuantityRecord& init = result.trajectory.front();

    const auto add = [&rep](const std::string& name, bool ok, double worst,
                            double t) {
        rep.lines.push_back({name,
                             ok ? VerifyLine::Status::Pass
                                : VerifyLine::Status::Fail,
                             worst, t});
        if (!ok) rep.pass = false;
    };
    const auto info = [&rep](const std::string& name, double worst, double t) {
        rep.lines.push_back({name, VerifyLine::Status::Info, worst, t});
    };

    add("area_conservation", result.max_area_drift <= tol.tol_A,
        result.max_area_drift, result.t_area_drift);
    add("length_monotone", result.max_length_increase <= tol.tol_L,
        result.max_length_increase, result.t_length_increase);
    add("rotation_constant", result.max_omega_drift <= tol.tol_omega,
        result.max_omega_drift, result.t_omega_drift);

    const double margin0 = kosc_margin(init.Kosc, init.omega, true);
    const double margin0_relaxed = kosc_margin(init.Kosc, init.omega, false);
    info("kosc_margin_initial", margin0, 0.0);
    info("kosc_margin_initial_excl_rotation", margin0_relaxed, 0.0);
    if (margin0 >= tol.margin_floor) {
        add("kosc_monotone",
            result.max_kosc_increase <=
                tol.tol_mono * init.Kosc + tol.kosc_abs_floor,
            result.max_kosc_increase, result.t_kosc_increase);
    } else {
        info("kosc_monotone_not_asserted", result.max_kosc_increase,
             result.t_kosc_increase);
    }

    add("bc_curvature_flux", result.max_bc_ks <= tol.bc_tol, result.max_bc_ks,
        result.t_bc_ks);
    if (init.m >= 2)
        add("bc_curvature_flux3", result.max_bc_ks3 <= tol.bc_tol,
            result.max_bc_ks3, result.t_bc_ks3);

    if (tol.enable_bounds) {
        const BoundsReport bounds =
            check_bounds(result.trajectory, init, tol.bounds_tol);
        if (bounds.informational) {
            info("bounds_not_asserted_above_threshold", init.Kosc, 0.0);
        } else {
            add("bound_k2", bounds.k2_bound.pass, bounds.k2_bound.worst_margin,
                bounds.k2_bound.worst_t);
            add("bound_kosc_decay", bounds.kosc_decay.pass,
                bounds.kosc_decay.worst_margin, bounds.kosc_decay.worst_t);
            add("bound_length_cubed", bounds.length_cubed.pass,
                bounds.length_cubed.worst_margin, bounds.length_cubed.worst_t);
        }
    }

    // Identity residual maxima are reported, not asserted: their size is a
    // discretization measurement, meaningful only under refinement.
    ResidualRecord worst;
    double tw_L = 0, tw_A = 0, tw_kbar = 0, tw_k2 = 0, tw_Kosc = 0;
    for (std::size_t i = 1; i < result.residuals.size(); ++i) {
        const ResidualRecord& r = result.residuals[i];
        const double t = result.trajectory[i].t;
        if (r.r_L > worst.r_L) { worst.r_L = r.r_L; tw_L = t; }
        if (r.r_A > worst.r_A) { worst.r_A = r.r_A; tw_A = t; }
        if (r.r_kbar > worst.r_kbar) { worst.r_kbar = r.r_kbar; tw_kbar = t; }
        if (r.r_k2 > worst.r_k2) { worst.r_k2 = r.r_k2; tw_k2 = t; }
        if (r.r_Kosc > worst.r_Kosc) { worst.r_Kosc = r.r_Kosc; tw_Kosc = t; }
    }
    info("residual_r_L", worst.r_L, tw_L);
    info("residual_r_A", worst.r_A, tw_A);
    info("residual_r_kbar", worst.r_kbar, tw_kbar);
    info("residual_r_k2", worst.r_k2, tw_k2);
    info("residual_r_Kosc", worst.r_Kosc, tw_Kosc);
    return rep;
}

}  // namespace conediff
