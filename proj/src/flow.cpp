#include "conediff/flow.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "conediff/band.hpp"
#include "conediff/kernels.hpp"
#include "conediff/pchip.hpp"

namespace conediff {

const char* to_string(TerminationStatus::Kind k) {
    switch (k) {
        case TerminationStatus::Kind::Converged: return "Converged";
        case TerminationStatus::Kind::TipReach: return "TipReach";
        case TerminationStatus::Kind::CurvatureBlowup: return "CurvatureBlowup";
        case TerminationStatus::Kind::TimeLimit: return "TimeLimit";
        case TerminationStatus::Kind::StepFloor: return "StepFloor";
    }
    return "Unknown";
}

std::vector<double> velocity_from_curvature_table(std::span<const double> k,
                                                  std::span<const double> s,
                                                  int m) {
    if (m < 1) throw GeometryError("flow order m must be >= 1");
    std::vector<double> v = curvature_derivative(k, s, 2 * m);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^(m+1)
    if (sign < 0.0)
        for (double& x : v) x = -x;
    return v;
}

std::vector<double> normal_velocity(const DiscreteCurve& curve, int m) {
    return velocity_from_curvature_table(curve.k, curve.s, m);
}

namespace {

// Row of a difference operator over extended node indices.
struct Stencil {
    int start = 0;
    std::vector<double> c;
};

// Linearly implicit system matrix M = I + dt (-1)^{m+1} D_{2m+2} on
// interleaved (x0,y0,x1,y1,...) coordinates.  D_{2m+2} is the (m+1)-fold
// composition of the flux-form second difference on the current arclength
// table, extended by mirrored spacings; ghost columns are folded back into
// interior ones through the ray reflections, which couples the x and y
// components in the boundary rows.
BandMatrix assemble_implicit(const DiscreteCurve& curve, const Cone& cone,
                             double dt, int m) {
    const int n = static_cast<int>(curve.nodes.size());
    const int g = m + 1;
    const int ext = n + 2 * g;

    std::vector<double> es(static_cast<std::size_t>(ext));
    for (int j = 0; j < n; ++j) es[static_cast<std::size_t>(g + j)] = curve.s[static_cast<std::size_t>(j)];
    for (int q = 1; q <= g; ++q) {
        es[static_cast<std::size_t>(g - q)] = 2.0 * curve.s[0] - curve.s[static_cast<std::size_t>(q)];
        es[static_cast<std::size_t>(g + n - 1 + q)] =
            2.0 * curve.s[static_cast<std::size_t>(n - 1)] - curve.s[static_cast<std::size_t>(n - 1 - q)];
    }

    // Base level: D2 rows wherever the 3-point stencil fits.
    std::vector<Stencil> op(static_cast<std::size_t>(ext));
    int lo = 1, hi = ext - 2;
    for (int e = lo; e <= hi; ++e) {
        const double h1 = es[static_cast<std::size_t>(e)] - es[static_cast<std::size_t>(e - 1)];
        const double h2 = es[static_cast<std::size_t>(e + 1)] - es[static_cast<std::size_t>(e)];
        op[static_cast<std::size_t>(e)] = {
            e - 1,
            {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))}};
    }

    for (int level = 1; level <= m; ++level) {
        std::vector<Stencil> nx(static_cast<std::size_t>(ext));
        const int nlo = lo + 1, nhi = hi - 1;
        for (int e = nlo; e <= nhi; ++e) {
            const double h1 = es[static_cast<std::size_t>(e)] - es[static_cast<std::size_t>(e - 1)];
            const double h2 = es[static_cast<std::size_t>(e + 1)] - es[static_cast<std::size_t>(e)];
            const double a0 = 2.0 / (h1 * (h1 + h2));
            const double a1 = -2.0 / (h1 * h2);
            const double a2 = 2.0 / (h2 * (h1 + h2));
            const Stencil& r0 = op[static_cast<std::size_t>(e - 1)];
            const Stencil& r1 = op[static_cast<std::size_t>(e)];
            const Stencil& r2 = op[static_cast<std::size_t>(e + 1)];
            const int start = r0.start;
            const int end = r2.start + static_cast<int>(r2.c.size());
            Stencil res;
            res.start = start;
            res.c.assign(static_cast<std::size_t>(end - start), 0.0);
            for (std::size_t i = 0; i < r0.c.size(); ++i)
                res.c[static_cast<std::size_t>(r0.start - start) + i] += a0 * r0.c[i];
            for (std::size_t i = 0; i < r1.c.size(); ++i)
                res.c[static_cast<std::size_t>(r1.start - start) + i] += a1 * r1.c[i];
            for (std::size_t i = 0; i < r2.c.size(); ++i)
                res.c[static_cast<std::size_t>(r2.start - start) + i] += a2 * r2.c[i];
            nx[static_cast<std::size_t>(e)] = std::move(res);
        }
        op = std::move(nx);
        lo = nlo;
        hi = nhi;
    }

    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^(m+1)
    const Reflection r1m = cone.reflect1();
    const Reflection r2m = cone.reflect2();
    BandMatrix mat(2 * n, 2 * m + 3);
    for (int i = 0; i < n; ++i) {
        const Stencil& row = op[static_cast<std::size_t>(g + i)];
        for (std::size_t idx = 0; idx < row.c.size(); ++idx) {
            const int cnode = row.start + static_cast<int>(idx) - g;
            const double a = dt * sign * row.c[idx];
            if (a == 0.0) continue;
            if (cnode >= 0 && cnode < n) {
                mat.add(2 * i, 2 * cnode, a);
                mat.add(2 * i + 1, 2 * cnode + 1, a);
            } else if (cnode < 0) {
                const int q = -cnode;
                mat.add(2 * i, 2 * q, a * r1m.m00);
                mat.add(2 * i, 2 * q + 1, a * r1m.m01);
                mat.add(2 * i + 1, 2 * q, a * r1m.m10);
                mat.add(2 * i + 1, 2 * q + 1, a * r1m.m11);
            } else {
                const int q = 2 * (n - 1) - cnode;
                mat.add(2 * i, 2 * q, a * r2m.m00);
                mat.add(2 * i, 2 * q + 1, a * r2m.m01);
                mat.add(2 * i + 1, 2 * q, a * r2m.m10);
                mat.add(2 * i + 1, 2 * q + 1, a * r2m.m11);
            }
        }
    }
    for (int d = 0; d < 2 * n; ++d) mat.add(d, d, 1.0);
    return mat;
}

double min_segment(const DiscreteCurve& c) {
    double lo = c.s[1] - c.s[0];
    for (std::size_t i = 1; i + 1 < c.s.size(); ++i)
        lo = std::min(lo, c.s[i + 1] - c.s[i]);
    return lo;
}

}  // namespace

bool apply_boundary(const DiscreteCurve& curve, const Cone& cone,
                    double rho_min, DiscreteCurve& out) {
    std::vector<Vec2> nodes = curve.nodes;
    const double rho1 = ray_parameter(nodes.front(), cone.dir1());
    const double rho2 = ray_parameter(nodes.back(), cone.dir2());
    if (rho1 < rho_min || rho2 < rho_min) return false;
    nodes.front() = rho1 * cone.dir1();
    nodes.back() = rho2 * cone.dir2();
    out = build_tables(std::move(nodes), cone);
    return true;
}

double adapt_dt(double dt, double error_estimate, const FlowParams& p,
                double ds_min) {
    double factor = 1.25;
    if (error_estimate > 0.0)
        factor = std::clamp(0.9 * std::sqrt(p.tol_step / error_estimate), 0.25,
                            1.25);
    double cap = p.dt_max;
    if (p.cfl_c > 0.0)
        cap = std::min(cap, p.cfl_c * std::pow(ds_min, 2.0 * p.m + 2.0));
    return std::clamp(dt * factor, p.dt_min, cap);
}

bool flow_substep(const DiscreteCurve& curve, double dt, int m,
                  const FlowParams& p, double area_ref, DiscreteCurve& out) {
    if (!curve.cone)
        throw GeometryError("flow_substep requires cone-built tables");
    const Cone cone = *curve.cone;
    const std::vector<double> v = normal_velocity(curve, m);
    BandLU lu(assemble_implicit(curve, cone, dt, m));

    const std::size_t n = curve.nodes.size();
    std::vector<double> rhs(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        rhs[2 * j] = dt * v[j] * curve.nu[j].x;
        rhs[2 * j + 1] = dt * v[j] * curve.nu[j].y;
    }
    lu.solve(rhs);

    std::vector<Vec2> nodes = curve.nodes;
    for (std::size_t j = 0; j < n; ++j)
        nodes[j] += Vec2{rhs[2 * j], rhs[2 * j + 1]};

    const double rho1 = ray_parameter(nodes.front(), cone.dir1());
    const double rho2 = ray_parameter(nodes.back(), cone.dir2());
    if (rho1 < p.rho_min || rho2 < p.rho_min) return false;
    nodes.front() = rho1 * cone.dir1();
    nodes.back() = rho2 * cone.dir2();

    if (p.area_renorm) {
        const double a = sector_polygon_area(nodes);
        if (a > 0.0) kernels::scale_points(nodes, std::sqrt(area_ref / a));
    }
    out = build_tables(std::move(nodes), cone);
    return true;
}

StepOutcome flow_step(FlowState& state, const FlowParams& p, double area_ref) {
    StepOutcome oc;
    oc.dt_used = state.dt;
    DiscreteCurve y1, yh, y2;
    try {
        if (!flow_substep(state.curve, state.dt, p.m, p, area_ref, y1) ||
            !flow_substep(state.curve, 0.5 * state.dt, p.m, p, area_ref, yh) ||
            !flow_substep(yh, 0.5 * state.dt, p.m, p, area_ref, y2)) {
            oc.tip_reach = true;
            return oc;
        }
    } catch (const SingularMatrixError&) {
        oc.solve_failed = true;
        oc.dt_next = 0.5 * state.dt;
        return oc;
    }
    oc.error = kernels::max_node_distance(y1.nodes, y2.nodes);
    if (oc.error <= p.tol_step) {
        oc.accepted = true;
        oc.displacement = kernels::max_node_distance(state.curve.nodes, y2.nodes);
        state.curve = std::move(y2);
        state.t += state.dt;
        oc.dt_next = adapt_dt(state.dt, oc.error, p, min_segment(state.curve));
    } else {
        oc.dt_next =
            state.dt *
            std::clamp(0.9 * std::sqrt(p.tol_step / oc.error), 0.25, 0.9);
    }
    return oc;
}

DiscreteCurve remesh(const DiscreteCurve& curve) {
    const std::size_t n = curve.nodes.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = curve.nodes[i].x;
        ys[i] = curve.nodes[i].y;
    }
    const Pchip px(curve.s, xs), py(curve.s, ys);
    const double total = curve.s.back();
    const double nseg = static_cast<double>(n - 1);
    std::vector<Vec2> nodes(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sj = total * static_cast<double>(j) / nseg;
        nodes[j] = Vec2{px(sj), py(sj)};
    }
    if (!curve.cone) return build_tables(std::move(nodes));
    const double a_pre = sector_polygon_area(curve.nodes);
    const double a_post = sector_polygon_area(nodes);
    if (a_pre > 0.0 && a_post > 0.0)
        kernels::scale_points(nodes, std::sqrt(a_pre / a_post));
    return build_tables(std::move(nodes), *curve.cone);
}

RunResult run_flow(const DiscreteCurve& initial, const FlowParams& p) {
    if (!initial.cone)
        throw GeometryError("run_flow requires cone-built tables");
    RunResult res;
    FlowState st;
    st.curve = initial;
    st.t = 0.0;
    st.dt = p.dt0;
    st.m = p.m;
    const double area_ref = area(initial);

    QuantityRecord rec = measure(st.curve, 0.0, p.dt0, p.m);
    st.cached = rec;
    res.trajectory.push_back(rec);
    res.residuals.push_back({});
    res.snapshots.push_back(st);

    const double omega0 = rec.omega;
    const double a0 = rec.A;
    QuantityRecord prev = rec;
    QuantityRecord last_recorded = rec;
    int since_record = 0;
    int since_snapshot = 0;

    auto finish = [&](TerminationStatus::Kind kind, const std::string& detail) {
        res.termination.kind = kind;
        res.termination.t_final = st.t;
        res.termination.detail = detail;
        if (res.trajectory.back().t != st.cached.t) {
            res.residuals.push_back(check_identities(last_recorded, st.cached));
            res.trajectory.push_back(st.cached);
        }
        if (res.snapshots.back().t != st.t) res.snapshots.push_back(st);
    };

    if (p.t_end <= 0.0) {
        finish(TerminationStatus::Kind::TimeLimit, "t_end reached at t = 0");
        return res;
    }

    const double t_eps = 1e-12 * std::max(1.0, p.t_end);
    while (true) {
        if (st.t >= p.t_end - t_eps) {
            finish(TerminationStatus::Kind::TimeLimit,
                   "time limit t_end = " + std::to_string(p.t_end));
            return res;
        }
        if (st.dt < p.dt_min) {
            finish(TerminationStatus::Kind::StepFloor,
                   "step size " + std::to_string(st.dt) + " below dt_min");
            return res;
        }
        // Land exactly on t_end; the shortened final step is exempt from the
        // dt_min floor.
        st.dt = std::min(st.dt, p.t_end - st.t);

        StepOutcome oc = flow_step(st, p, area_ref);
        if (oc.tip_reach) {
            finish(TerminationStatus::Kind::TipReach,
                   "endpoint ray parameter fell below rho_min = " +
                       std::to_string(p.rho_min) + " during step at t = " +
                       std::to_string(st.t));
            return res;
        }
        if (!oc.accepted) {
            ++res.rejected;
            st.dt = oc.dt_next;
            if (st.dt < p.dt_min) {
                finish(TerminationStatus::Kind::StepFloor,
                       "controller drove dt below dt_min");
                return res;
            }
            continue;
        }
        ++res.accepted;

        QuantityRecord cur = measure(st.curve, st.t, oc.dt_used, p.m);
        const auto track = [&](double value, double& worst, double& when) {
            if (value > worst) {
                worst = value;
                when = st.t;
            }
        };
        track(std::fabs(cur.A - a0) / a0, res.max_area_drift, res.t_area_drift);
        track(cur.L - prev.L, res.max_length_increase, res.t_length_increase);
        track(std::fabs(cur.omega - omega0), res.max_omega_drift,
              res.t_omega_drift);
        track(cur.Kosc - prev.Kosc, res.max_kosc_increase, res.t_kosc_increase);
        track(std::max(cur.bc_ks_minus, cur.bc_ks_plus), res.max_bc_ks,
              res.t_bc_ks);
        track(std::max(cur.bc_ks3_minus, cur.bc_ks3_plus), res.max_bc_ks3,
              res.t_bc_ks3);

        double lo, hi;
        {
            std::vector<double> segs(st.curve.s.size() - 1);
            for (std::size_t i = 0; i + 1 < st.curve.s.size(); ++i)
                segs[i] = st.curve.s[i + 1] - st.curve.s[i];
            kernels::minmax(segs, lo, hi);
        }
        if (hi / lo > p.remesh_ratio) {
            st.curve = remesh(st.curve);
            ++res.remeshes;
            cur = measure(st.curve, st.t, oc.dt_used, p.m);
        }
        prev = cur;
        st.cached = cur;

        if (++since_record >= p.record_every) {
            res.residuals.push_back(check_identities(last_recorded, cur));
            res.trajectory.push_back(cur);
            last_recorded = cur;
            since_record = 0;
        }
        if (p.snapshot_every > 0 && ++since_snapshot >= p.snapshot_every) {
            res.snapshots.push_back(st);
            since_snapshot = 0;
        }

        if (cur.k_l2sq > p.k2_cap) {
            finish(TerminationStatus::Kind::CurvatureBlowup,
                   "curvature L2 norm exceeded cap: " +
                       std::to_string(cur.k_l2sq) + " > " +
                       std::to_string(p.k2_cap));
            return res;
        }
        if (p.tol_c > 0.0 && p.tol_v > 0.0 && cur.max_dev_inf < p.tol_c &&
            oc.displacement / oc.dt_used < p.tol_v) {
            finish(TerminationStatus::Kind::Converged,
                   "max |k - kbar| and realized speed below tolerances");
            return res;
        }
        st.dt = oc.dt_next;
    }
}

}  // namespace conediff
