#include "conediff/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conediff/kernels.hpp"

namespace conediff {

namespace {

constexpr double kPi = std::numbers::pi;

// Even extension by one sample on each side (mirror values, mirror spacing).
void pad_even(std::span<const double> vals, std::span<const double> s,
              std::vector<double>& pv, std::vector<double>& ps) {
    const std::size_t n = vals.size();
    pv.resize(n + 2);
    ps.resize(n + 2);
    pv[0] = vals[1];
    ps[0] = 2.0 * s[0] - s[1];
    for (std::size_t i = 0; i < n; ++i) {
        pv[i + 1] = vals[i];
        ps[i + 1] = s[i];
    }
    pv[n + 1] = vals[n - 2];
    ps[n + 1] = 2.0 * s[n - 1] - s[n - 2];
}

}  // namespace

std::vector<double> curvature_derivative(std::span<const double> k,
                                         std::span<const double> s, int order) {
    std::vector<double> cur(k.begin(), k.end());
    std::vector<double> pv, ps, out(k.size());
    int rem = order;
    while (rem >= 2) {
        pad_even(cur, s, pv, ps);
        kernels::diff2(pv, ps, 1, out);
        cur = out;
        rem -= 2;
    }
    if (rem == 1) {
        pad_even(cur, s, pv, ps);
        kernels::diff1(pv, ps, 1, out);
        cur = out;
    }
    return cur;
}

QuantityRecord measure(const DiscreteCurve& c, double t, double dt, int m) {
    QuantityRecord q;
    q.t = t;
    q.dt = dt;
    q.m = m;
    q.L = c.length();
    q.A = c.cone ? area(c) : 0.0;
    q.kbar = average_curvature(c);
    q.omega = rotation_number(c);

    const std::size_t n = c.k.size();
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = c.k[i] - q.kbar;
    q.Kosc = q.L * kernels::weighted_dot(dev, dev, c.w);
    q.max_dev_inf = kernels::max_abs(dev);

    const std::vector<double> ks = curvature_derivative(c.k, c.s, 1);
    const std::vector<double> kss = curvature_derivative(c.k, c.s, 2);
    q.k_l2sq = kernels::weighted_dot(c.k, c.k, c.w);
    q.ks_l2sq = kernels::weighted_dot(ks, ks, c.w);
    q.kss_l2sq = kernels::weighted_dot(kss, kss, c.w);

    std::vector<double> ks2(n), k2(n);
    for (std::size_t i = 0; i < n; ++i) {
        ks2[i] = ks[i] * ks[i];
        k2[i] = c.k[i] * c.k[i];
    }
    q.i_k2ks2 = kernels::weighted_dot(k2, ks2, c.w);
    std::vector<double> dev2(n);
    for (std::size_t i = 0; i < n; ++i) dev2[i] = dev[i] * dev[i];
    q.i_dev2ks2 = kernels::weighted_dot(dev2, ks2, c.w);
    q.i_devks2 = kernels::weighted_dot(dev, ks2, c.w);

    if (m >= 2) {
        const std::vector<double> ks3 = curvature_derivative(c.k, c.s, 3);
        const std::vector<double> ks4 = curvature_derivative(c.k, c.s, 4);
        q.ks3_l2sq = kernels::weighted_dot(ks3, ks3, c.w);
        q.ks4_l2sq = kernels::weighted_dot(ks4, ks4, c.w);
        std::vector<double> kks2(n);
        for (std::size_t i = 0; i < n; ++i) kks2[i] = c.k[i] * ks2[i];
        q.i_kks2kss = kernels::weighted_dot(kks2, kss, c.w);
        std::vector<double> kss2(n);
        for (std::size_t i = 0; i < n; ++i) kss2[i] = kss[i] * kss[i];
        q.i_k2kss2 = kernels::weighted_dot(k2, kss2, c.w);
    }

    q.bc_ks_minus = std::fabs(endpoint_derivative(c.k, c.s, 1, true, 3));
    q.bc_ks_plus = std::fabs(endpoint_derivative(c.k, c.s, 1, false, 3));
    if (m >= 2) {
        q.bc_ks3_minus = std::fabs(endpoint_derivative(c.k, c.s, 3, true, 5));
        q.bc_ks3_plus = std::fabs(endpoint_derivative(c.k, c.s, 3, false, 5));
    }

    if (c.cone) {
        q.rho_minus = ray_parameter(c.nodes.front(), c.cone->dir1());
        q.rho_plus = ray_parameter(c.nodes.back(), c.cone->dir2());
    }
    return q;
}

ResidualRecord check_identities(const QuantityRecord& prev,
                                const QuantityRecord& next) {
    ResidualRecord r;
    const double dt = next.t - prev.t;
    if (!(dt > 0.0))
        throw DiagnosticsError("check_identities needs increasing times");
    const int m = prev.m;
    const auto avg = [](double a, double b) { return 0.5 * (a + b); };

    // d/dt L = -∫ k_{s^m}^2 ds.
    const double grad_prev = (m == 1) ? prev.ks_l2sq : prev.kss_l2sq;
    const double grad_next = (m == 1) ? next.ks_l2sq : next.kss_l2sq;
    r.r_L = std::fabs((next.L - prev.L) / dt + avg(grad_prev, grad_next));

    // d/dt A = 0.
    r.r_A = std::fabs((next.A - prev.A) / dt);

    // d/dt kbar = (2 pi w / L^2) ∫ k_{s^m}^2 ds.
    r.r_kbar = std::fabs(
        (next.kbar - prev.kbar) / dt -
        avg(2.0 * kPi * prev.omega / (prev.L * prev.L) * grad_prev,
            2.0 * kPi * next.omega / (next.L * next.L) * grad_next));

    // d/dt ∫k^2 ds.
    const auto k2_rhs = [m](const QuantityRecord& q) {
        if (m == 1) return -2.0 * q.kss_l2sq + 3.0 * q.i_k2ks2;
        return -2.0 * q.ks3_l2sq + 6.0 * q.i_kks2kss + 3.0 * q.i_k2kss2;
    };
    r.r_k2 = std::fabs((next.k_l2sq - prev.k_l2sq) / dt -
                       avg(k2_rhs(prev), k2_rhs(next)));

    // d/dt Kosc.
    const auto kosc_rhs = [m, &k2_rhs](const QuantityRecord& q) {
        if (m == 1)
            return -q.Kosc * q.ks_l2sq / q.L - 2.0 * q.L * q.kss_l2sq +
                   3.0 * q.L * q.i_dev2ks2 + 6.0 * q.kbar * q.L * q.i_devks2 +
                   2.0 * q.kbar * q.kbar * q.L * q.ks_l2sq;
        // Kosc = L ∫k^2 - 4 pi^2 w^2, so K' = L' ∫k^2 + L (∫k^2)'.
        return -q.kss_l2sq * q.k_l2sq + q.L * k2_rhs(q);
    };
    r.r_Kosc = std::fabs((next.Kosc - prev.Kosc) / dt -
                         avg(kosc_rhs(prev), kosc_rhs(next)));
    return r;
}

double smallness_threshold(double omega) {
    if (!(omega > 0.0 && omega < 0.5))
        throw DiagnosticsError("smallness_threshold requires 0 < omega < 1/2");
    const double a = 24.0 * omega;
    const double b = (48.0 / kPi) * (1.0 - 4.0 * omega * omega);
    const double bracket = b / (std::sqrt(a * a + b) + a);
    const double f = kPi / 12.0;
    return f * f * bracket * bracket;
}

double kosc_margin(double kosc, double omega, bool include_rotation_term) {
    if (kosc < 0.0) throw DiagnosticsError("kosc_margin requires Kosc >= 0");
    double margin = 2.0 - (6.0 / kPi) * kosc - 24.0 * omega * std::sqrt(kosc);
    if (include_rotation_term) margin -= 8.0 * omega * omega;
    return margin;
}

namespace {

std::vector<double> uniform_derivative_o4(std::span<const double> g, double h) {
    const std::size_t n = g.size();
    std::vector<double> d(n);
    const double c = 1.0 / (12.0 * h);
    d[0] = (-25.0 * g[0] + 48.0 * g[1] - 36.0 * g[2] + 16.0 * g[3] - 3.0 * g[4]) * c;
    d[1] = (-3.0 * g[0] - 10.0 * g[1] + 18.0 * g[2] - 6.0 * g[3] + g[4]) * c;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (g[i - 2] - 8.0 * g[i - 1] + 8.0 * g[i + 1] - g[i + 2]) * c;
    d[n - 2] = (3.0 * g[n - 1] + 10.0 * g[n - 2] - 18.0 * g[n - 3] +
                6.0 * g[n - 4] - g[n - 5]) * c;
    d[n - 1] = (25.0 * g[n - 1] - 48.0 * g[n - 2] + 36.0 * g[n - 3] -
                16.0 * g[n - 4] + 3.0 * g[n - 5]) * c;
    return d;
}

}  // namespace

double check_psw(std::span<const double> g, double len, PswVariant variant) {
    const std::size_t n = g.size();
    if (n < 8) throw DiagnosticsError("check_psw needs at least 8 samples");
    if (!(len > 0.0)) throw DiagnosticsError("check_psw needs positive length");
    const double h = len / static_cast<double>(n - 1);

    std::vector<double> s(n), one(n, 1.0), w(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = h * static_cast<double>(i);
    kernels::trapezoid_weights(s, w);

    const double gmax = kernels::max_abs(g);
    const double mean = kernels::weighted_sum(g, w) / len;
    const bool mean_zero_hyp =
        variant == PswVariant::MeanZero || variant == PswVariant::SupMeanZero;
    if (mean_zero_hyp) {
        if (std::fabs(mean) > 1e-8 * (gmax + 1e-300))
            throw DiagnosticsError("check_psw: samples are not mean-zero");
    } else {
        if (std::fabs(g.front()) > 1e-10 * (gmax + 1e-300) ||
            std::fabs(g.back()) > 1e-10 * (gmax + 1e-300))
            throw DiagnosticsError("check_psw: samples are not endpoint-zero");
    }

    const std::vector<double> gx = uniform_derivative_o4(g, h);
    const double int_g2 = kernels::weighted_dot(g, g, w);
    const double int_gx2 = kernels::weighted_dot(gx, gx, w);
    if (int_gx2 == 0.0)
        throw DiagnosticsError("check_psw: derivative vanishes identically");

    switch (variant) {
        case PswVariant::MeanZero:
        case PswVariant::EndpointsZero:
            return int_g2 / ((len * len) / (kPi * kPi) * int_gx2);
        case PswVariant::SupMeanZero:
            return gmax * gmax / (2.0 * len / kPi * int_gx2);
        case PswVariant::SupEndpointsZero:
            return gmax * gmax / (len / kPi * int_gx2);
    }
    throw DiagnosticsError("check_psw: unknown variant");
}

BoundsReport check_bounds(std::span<const QuantityRecord> trajectory,
                          const QuantityRecord& initial, double tol_rel) {
    BoundsReport rep;
    const double k0 = initial.Kosc;
    const double l0 = initial.L;
    const double w = initial.omega;
    rep.margin_with_rotation = kosc_margin(k0, w, true);
    rep.margin_without_rotation = kosc_margin(k0, w, false);
    rep.delta = rep.margin_with_rotation;
    const double threshold = smallness_threshold(std::clamp(w, 1e-12, 0.5 - 1e-12));
    rep.informational = !(k0 <= threshold && rep.delta > 0.0);

    const double four_pi2_w2 = 4.0 * kPi * kPi * w * w;
    const double rate = rep.delta * std::pow(kPi, 4) / std::pow(l0, 4);

    auto update = [](BoundCheck& c, double lhs, double rhs, double scale,
                     double t) {
        const double viol = (lhs - rhs) / scale;
        if (viol > c.worst_margin) {
            c.worst_margin = viol;
            c.worst_t = t;
        }
        if (viol > 0.0) c.pass = false;
    };
    rep.k2_bound.worst_margin = -1e300;
    rep.kosc_decay.worst_margin = -1e300;
    rep.length_cubed.worst_margin = -1e300;

    for (const QuantityRecord& q : trajectory) {
        const double decay = std::exp(-rate * q.t);
        // (a)
        {
            const double rhs = (k0 + four_pi2_w2) / q.L;
            update(rep.k2_bound, q.k_l2sq, rhs * (1.0 + tol_rel), rhs, q.t);
        }
        // (b); the absolute floor keeps round-off noise of a near-exact arc
        // (Kosc ~ 1e-26) from registering as a violation.
        {
            const double rhs = (k0 / l0) * decay;
            const double floor = 1e-18 / l0;
            const double scale = std::max(rhs, floor);
            update(rep.kosc_decay, q.Kosc / q.L, rhs * (1.0 + tol_rel) + floor,
                   scale, q.t);
        }
        // (c)
        {
            const double l03 = l0 * l0 * l0;
            const double rhs =
                l03 * (1.0 + 3.0 * k0 / (rep.delta * kPi * kPi) * (decay - 1.0));
            update(rep.length_cubed, q.L * q.L * q.L, rhs + tol_rel * l03, l03,
                   q.t);
        }
    }
    return rep;
}

double decay_fit(std::span<const std::pair<double, double>> series) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, y] : series)
        if (y > 0.0 && std::isfinite(y) && std::isfinite(t))
            pts.emplace_back(t, std::log(y));
    if (pts.size() < 10)
        throw DiagnosticsError("decay_fit: fewer than 10 positive samples");
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const double n = static_cast<double>(pts.size());
    for (const auto& [t, ly] : pts) {
        st += t;
        sy += ly;
        stt += t * t;
        sty += t * ly;
    }
    const double denom = n * stt - st * st;
    if (denom == 0.0) throw DiagnosticsError("decay_fit: degenerate abscissae");
    const double slope = (n * sty - st * sy) / denom;
    return -slope;
}

}  // namespace conediff
