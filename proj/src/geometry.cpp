#include "conediff/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "conediff/kernels.hpp"

namespace conediff {

namespace {

constexpr int kMinNodes = 9;  // N >= 8 segments

void validate_nodes(const std::vector<Vec2>& nodes) {
    if (nodes.size() < kMinNodes)
        throw GeometryError("curve needs at least 9 nodes, got " +
                            std::to_string(nodes.size()));
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i] == nodes[i + 1])
            throw DegenerateSegmentError("duplicate consecutive nodes at index " +
                                         std::to_string(i));
}

std::vector<double> cumulative_arclength(const std::vector<Vec2>& nodes) {
    std::vector<double> h(nodes.size() - 1);
    kernels::segment_lengths(nodes, h);
    std::vector<double> s(nodes.size());
    s[0] = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0.0)
            throw DegenerateSegmentError("zero-length segment at index " +
                                         std::to_string(i));
        s[i + 1] = s[i] + h[i];
    }
    return s;
}

Vec2 normalized(Vec2 v) { return v / v.norm(); }

void check_endpoints_on_rays(const std::vector<Vec2>& nodes, const Cone& cone,
                             double len) {
    const double tol = kOnRayTol * len;
    const double off1 = ray_offset(nodes.front(), cone.dir1());
    const double off2 = ray_offset(nodes.back(), cone.dir2());
    if (off1 > tol || ray_parameter(nodes.front(), cone.dir1()) <= 0.0)
        throw BoundaryViolationError("start node off ray 1 by " +
                                     std::to_string(off1));
    if (off2 > tol || ray_parameter(nodes.back(), cone.dir2()) <= 0.0)
        throw BoundaryViolationError("end node off ray 2 by " +
                                     std::to_string(off2));
}

}  // namespace

Cone::Cone(double t1, double t2) : theta1(t1), theta2(t2) {
    if (!(t2 >= 0.0 && t2 < t1 && t1 < std::numbers::pi))
        throw GeometryError("cone requires 0 <= theta2 < theta1 < pi");
}

double ray_offset(Vec2 p, Vec2 ray_dir) {
    return std::fabs(cross(ray_dir, p));
}

double ray_parameter(Vec2 p, Vec2 ray_dir) { return dot(p, ray_dir); }

DiscreteCurve build_tables(std::vector<Vec2> nodes) {
    validate_nodes(nodes);
    DiscreteCurve c;
    c.nodes = std::move(nodes);
    c.s = cumulative_arclength(c.nodes);
    const std::size_t n = c.nodes.size();
    c.w.resize(n);
    kernels::trapezoid_weights(c.s, c.w);

    c.tau.resize(n);
    c.nu.resize(n);
    c.k.resize(n);

    // Interior: centered three-point stencils in arclength.
    std::vector<Vec2> d2(n - 2);
    std::vector<Vec2> d1(n - 2);
    kernels::diff2_vec(c.nodes, c.s, 1, d2);
    kernels::diff1_vec(c.nodes, c.s, 1, d1);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        c.tau[j] = normalized(d1[j - 1]);
        c.nu[j] = jrot(c.tau[j]);
        c.k[j] = -dot(d2[j - 1], c.nu[j]);
    }

    // One-sided endpoints: tangent from the boundary segment, curvature from
    // the one-sided three-point second difference.
    c.tau[0] = normalized(c.nodes[1] - c.nodes[0]);
    c.nu[0] = jrot(c.tau[0]);
    c.tau[n - 1] = normalized(c.nodes[n - 1] - c.nodes[n - 2]);
    c.nu[n - 1] = jrot(c.tau[n - 1]);
    {
        const double h1 = c.s[1] - c.s[0];
        const double h2 = c.s[2] - c.s[1];
        const Vec2 dd = ((c.nodes[2] - c.nodes[1]) / h2 -
                         (c.nodes[1] - c.nodes[0]) / h1) *
                        (2.0 / (h1 + h2));
        c.k[0] = -dot(dd, c.nu[0]);
        const double g1 = c.s[n - 1] - c.s[n - 2];
        const double g2 = c.s[n - 2] - c.s[n - 3];
        const Vec2 ee = ((c.nodes[n - 1] - c.nodes[n - 2]) / g1 -
                         (c.nodes[n - 2] - c.nodes[n - 3]) / g2) *
                        (2.0 / (g1 + g2));
        c.k[n - 1] = -dot(ee, c.nu[n - 1]);
    }
    return c;
}

DiscreteCurve build_tables(std::vector<Vec2> nodes, const Cone& cone) {
    validate_nodes(nodes);
    DiscreteCurve c;
    c.nodes = std::move(nodes);
    c.s = cumulative_arclength(c.nodes);
    check_endpoints_on_rays(c.nodes, cone, c.length());
    c.cone = cone;
    const std::size_t n = c.nodes.size();
    c.w.resize(n);
    kernels::trapezoid_weights(c.s, c.w);

    // Ghost extension: one reflected node beyond each end.
    std::vector<Vec2> pts(n + 2);
    std::vector<double> sx(n + 2);
    pts[0] = cone.reflect1()(c.nodes[1]);
    sx[0] = -c.s[1];
    for (std::size_t j = 0; j < n; ++j) {
        pts[j + 1] = c.nodes[j];
        sx[j + 1] = c.s[j];
    }
    pts[n + 1] = cone.reflect2()(c.nodes[n - 2]);
    sx[n + 1] = 2.0 * c.s[n - 1] - c.s[n - 2];

    c.tau.resize(n);
    c.nu.resize(n);
    c.k.resize(n);
    std::vector<Vec2> d2(n);
    std::vector<Vec2> d1(n);
    kernels::diff2_vec(pts, sx, 1, d2);
    kernels::diff1_vec(pts, sx, 1, d1);
    for (std::size_t j = 0; j < n; ++j) {
        c.tau[j] = normalized(d1[j]);
        c.nu[j] = jrot(c.tau[j]);
        c.k[j] = -dot(d2[j], c.nu[j]);
    }
    return c;
}

double length(const DiscreteCurve& c) { return c.length(); }

double sector_polygon_area(std::span<const Vec2> nodes) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        acc += cross(nodes[j], nodes[j + 1]);
    return -0.5 * acc;
}

double area(const DiscreteCurve& c) {
    if (!c.cone)
        throw BoundaryViolationError("area requires a curve built with a cone");
    check_endpoints_on_rays(c.nodes, *c.cone, c.length());
    return sector_polygon_area(c.nodes);
}

double average_curvature(const DiscreteCurve& c) {
    return kernels::weighted_sum(c.k, c.w) / c.length();
}

double oscillation_of_curvature(const DiscreteCurve& c) {
    const double kbar = average_curvature(c);
    std::vector<double> dev(c.k.size());
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = c.k[i] - kbar;
    return c.length() * kernels::weighted_dot(dev, dev, c.w);
}

double rotation_number(const DiscreteCurve& c) {
    return kernels::weighted_sum(c.k, c.w) / (2.0 * std::numbers::pi);
}

ArcSpec ArcSpec::with_radius(const Cone& cone, double r) {
    if (!(r > 0.0)) throw GeometryError("arc radius must be positive");
    return {cone, r};
}

ArcSpec ArcSpec::with_area(const Cone& cone, double a) {
    if (!(a > 0.0)) throw GeometryError("arc area must be positive");
    return {cone, std::sqrt(2.0 * a / cone.opening())};
}

DiscreteCurve make_arc(const ArcSpec& spec, int n_segments) {
    if (n_segments < 8) throw GeometryError("arc needs at least 8 segments");
    std::vector<Vec2> nodes(static_cast<std::size_t>(n_segments) + 1);
    const double t1 = spec.cone.theta1;
    const double t2 = spec.cone.theta2;
    for (int j = 0; j <= n_segments; ++j) {
        const double theta = t1 + (t2 - t1) * static_cast<double>(j) /
                                     static_cast<double>(n_segments);
        nodes[static_cast<std::size_t>(j)] =
            Vec2{spec.radius * std::cos(theta), spec.radius * std::sin(theta)};
    }
    return build_tables(std::move(nodes), spec.cone);
}

double endpoint_derivative(std::span<const double> values,
                           std::span<const double> s, int order, bool left,
                           int npts) {
    const int n = static_cast<int>(values.size());
    if (npts > n) npts = n;
    if (npts < order + 1)
        throw GeometryError("endpoint_derivative: not enough samples");
    // Fit a polynomial in xi = (s - s_end)/h0 through npts one-sided points
    // and read off the requested derivative at xi = 0.
    std::array<double, 36> vmat{};
    std::array<double, 6> rhs{};
    if (npts > 6) npts = 6;
    const int base = left ? 0 : n - npts;
    const double s_end = left ? s[0] : s[n - 1];
    const double h0 = left ? (s[1] - s[0]) : (s[n - 1] - s[n - 2]);
    for (int r = 0; r < npts; ++r) {
        const double xi = (s[base + r] - s_end) / h0;
        double p = 1.0;
        for (int c = 0; c < npts; ++c) {
            vmat[static_cast<std::size_t>(r * npts + c)] = p;
            p *= xi;
        }
        rhs[static_cast<std::size_t>(r)] = values[base + r];
    }
    // Dense Gaussian elimination with partial pivoting on the tiny system.
    for (int col = 0; col < npts; ++col) {
        int piv = col;
        for (int r = col + 1; r < npts; ++r)
            if (std::fabs(vmat[static_cast<std::size_t>(r * npts + col)]) >
                std::fabs(vmat[static_cast<std::size_t>(piv * npts + col)]))
                piv = r;
        if (piv != col) {
            for (int c = 0; c < npts; ++c)
                std::swap(vmat[static_cast<std::size_t>(col * npts + c)],
                          vmat[static_cast<std::size_t>(piv * npts + c)]);
            std::swap(rhs[static_cast<std::size_t>(col)],
                      rhs[static_cast<std::size_t>(piv)]);
        }
        const double d = vmat[static_cast<std::size_t>(col * npts + col)];
        if (d == 0.0) throw GeometryError("endpoint_derivative: singular fit");
        for (int r = col + 1; r < npts; ++r) {
            const double l =
                vmat[static_cast<std::size_t>(r * npts + col)] / d;
            if (l == 0.0) continue;
            for (int c = col; c < npts; ++c)
                vmat[static_cast<std::size_t>(r * npts + c)] -=
                    l * vmat[static_cast<std::size_t>(col * npts + c)];
            rhs[static_cast<std::size_t>(r)] -=
                l * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::array<double, 6> coef{};
    for (int r = npts - 1; r >= 0; --r) {
        double acc = rhs[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < npts; ++c)
            acc -= vmat[static_cast<std::size_t>(r * npts + c)] *
                   coef[static_cast<std::size_t>(c)];
        coef[static_cast<std::size_t>(r)] =
            acc / vmat[static_cast<std::size_t>(r * npts + r)];
    }
    double fact = 1.0;
    for (int i = 2; i <= order; ++i) fact *= static_cast<double>(i);
    return coef[static_cast<std::size_t>(order)] * fact /
           std::pow(h0, static_cast<double>(order));
}

double integrate(std::span<const double> f, std::span<const double> s) {
    std::vector<double> w(s.size());
    kernels::trapezoid_weights(s, w);
    return kernels::weighted_sum(f, w);
}

double table_mean(std::span<const double> f, std::span<const double> s) {
    return integrate(f, s) / (s.back() - s.front());
}

}  // namespace conediff
