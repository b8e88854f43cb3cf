#include "conediff/initgen.hpp"

#include <cmath>
#include <numbers>

namespace conediff {

void PerturbationSpec::validate() const {
    if (!(base_radius > 0.0))
        throw GeometryError("perturbation base radius must be positive");
    double total = 0.0;
    for (const auto& [j, eps] : modes) {
        if (j < 1) throw GeometryError("perturbation mode index must be >= 1");
        total += std::fabs(eps);
    }
    if (total >= 1.0)
        throw GeometryError("perturbation amplitudes must satisfy sum|eps| < 1");
}

DiscreteCurve perturbed_arc(const Cone& cone, const PerturbationSpec& spec,
                            int n_segments) {
    spec.validate();
    if (n_segments < 8) throw GeometryError("arc needs at least 8 segments");
    const double t1 = cone.theta1;
    const double t2 = cone.theta2;
    const double phi = cone.opening();
    std::vector<Vec2> nodes(static_cast<std::size_t>(n_segments) + 1);
    for (int i = 0; i <= n_segments; ++i) {
        const double theta = t1 + (t2 - t1) * static_cast<double>(i) /
                                     static_cast<double>(n_segments);
        double bump = 0.0;
        for (const auto& [j, eps] : spec.modes)
            bump += eps * std::cos(static_cast<double>(j) * std::numbers::pi *
                                   (t1 - theta) / phi);
        const double rho = spec.base_radius * (1.0 + bump);
        if (!(rho > 0.0))
            throw GeometryError("perturbation makes the radial graph nonpositive");
        nodes[static_cast<std::size_t>(i)] =
            Vec2{rho * std::cos(theta), rho * std::sin(theta)};
    }
    return build_tables(std::move(nodes), cone);
}

namespace {

// One-sided quadratic-fit tangent at an endpoint (second order).
Vec2 onesided_tangent(const DiscreteCurve& c, bool left) {
    const std::size_t n = c.nodes.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = c.nodes[i].x;
        ys[i] = c.nodes[i].y;
    }
    const Vec2 d{endpoint_derivative(xs, c.s, 1, left, 3),
                 endpoint_derivative(ys, c.s, 1, left, 3)};
    return d / d.norm();
}

}  // namespace

CompatibilityReport compatibility_check(const DiscreteCurve& curve,
                                        const Cone& cone) {
    CompatibilityReport r;
    const Vec2 nu_start = jrot(onesided_tangent(curve, true));
    const Vec2 nu_end = jrot(onesided_tangent(curve, false));
    r.nu_dot_e_minus = std::fabs(dot(nu_start, cone.e_minus()));
    r.nu_dot_e_plus = std::fabs(dot(nu_end, cone.e_plus()));
    r.ks_minus = std::fabs(endpoint_derivative(curve.k, curve.s, 1, true, 3));
    r.ks_plus = std::fabs(endpoint_derivative(curve.k, curve.s, 1, false, 3));
    r.ks3_minus = std::fabs(endpoint_derivative(curve.k, curve.s, 3, true, 5));
    r.ks3_plus = std::fabs(endpoint_derivative(curve.k, curve.s, 3, false, 5));
    r.onray_minus = ray_offset(curve.nodes.front(), cone.dir1());
    r.onray_plus = ray_offset(curve.nodes.back(), cone.dir2());
    r.rho_minus = ray_parameter(curve.nodes.front(), cone.dir1());
    r.rho_plus = ray_parameter(curve.nodes.back(), cone.dir2());
    return r;
}

}  // namespace conediff
