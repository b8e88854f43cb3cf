#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "conediff/vec2.hpp"

namespace conediff {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSegmentError : GeometryError {
    using GeometryError::GeometryError;
};
struct BoundaryViolationError : GeometryError {
    using GeometryError::GeometryError;
};

// Region between two rays from the origin, angles theta1 > theta2, tip at
// the origin.  Opening angle must lie in (0, pi).
struct Cone {
    double theta1;
    double theta2;

    Cone(double t1, double t2);

    double opening() const { return theta1 - theta2; }

    // Unit directions along the rays.
    Vec2 dir1() const { return {std::cos(theta1), std::sin(theta1)}; }
    Vec2 dir2() const { return {std::cos(theta2), std::sin(theta2)}; }

    // Unit normals of the rays pointing into the cone interior.  e_minus
    // belongs to ray 1 (where the curve starts), e_plus to ray 2.
    Vec2 e_minus() const { return {std::sin(theta1), -std::cos(theta1)}; }
    Vec2 e_plus() const { return {-std::sin(theta2), std::cos(theta2)}; }

    Reflection reflect1() const { return Reflection::across_angle(theta1); }
    Reflection reflect2() const { return Reflection::across_angle(theta2); }
};

// Polyline curve from ray 1 to ray 2 with derived arclength, tangent,
// normal and curvature tables.  Immutable after construction.
//
// When built with a cone, endpoint tables use ghost nodes reflected across
// the rays (so the tangent at an endpoint is exactly perpendicular to its
// ray whenever the endpoint sits on it); without a cone the endpoints fall
// back to one-sided stencils.
struct DiscreteCurve {
    std::vector<Vec2> nodes;      // N+1 points
    std::optional<Cone> cone;
    std::vector<double> s;        // cumulative chord arclength, s[0] = 0
    std::vector<double> w;        // trapezoidal dual weights of s
    std::vector<Vec2> tau;        // unit tangents
    std::vector<Vec2> nu;         // unit normals, nu = J tau
    std::vector<double> k;        // scalar curvature, k = -<a_ss, nu>

    int segments() const { return static_cast<int>(nodes.size()) - 1; }
    double length() const { return s.back(); }
};

DiscreteCurve build_tables(std::vector<Vec2> nodes);
DiscreteCurve build_tables(std::vector<Vec2> nodes, const Cone& cone);

double length(const DiscreteCurve& c);
// Area enclosed by the curve and the cone rays (polygon sector through the
// tip; equals the midpoint quadrature of +1/2 ∫ <a, nu> ds).
double area(const DiscreteCurve& c);
// Signed area of the polygon closed through the origin (tip).
double sector_polygon_area(std::span<const Vec2> nodes);
double average_curvature(const DiscreteCurve& c);
// K_osc = L ∫ (k - kbar)^2 ds.
double oscillation_of_curvature(const DiscreteCurve& c);
// omega = (1/2pi) ∫ k ds.
double rotation_number(const DiscreteCurve& c);

// Stationary circular arc centered at the tip.
struct ArcSpec {
    Cone cone;
    double radius;

    static ArcSpec with_radius(const Cone& cone, double r);
    static ArcSpec with_area(const Cone& cone, double a);

    double sector_area() const { return 0.5 * radius * radius * cone.opening(); }
};

DiscreteCurve make_arc(const ArcSpec& spec, int n_segments);

// Quadrature helpers over sampled tables (trapezoidal in the abscissa).
double integrate(std::span<const double> f, std::span<const double> s);
double table_mean(std::span<const double> f, std::span<const double> s);

// Relative tolerance (times curve length) for endpoint-on-ray checks.
inline constexpr double kOnRayTol = 1e-10;

// Distance from p to the line of the ray at angle theta, and the ray
// parameter (signed distance along the ray).
double ray_offset(Vec2 p, Vec2 ray_dir);
double ray_parameter(Vec2 p, Vec2 ray_dir);

// Derivative of given order at the first (left=true) or last sample of a
// table, from a one-sided polynomial fit through npts points.  Exact for
// polynomials of degree npts-1.
double endpoint_derivative(std::span<const double> values,
                           std::span<const double> s, int order, bool left,
                           int npts);

}  // namespace conediff
