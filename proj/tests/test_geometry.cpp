#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "conediff/geometry.hpp"
#include "conediff/initgen.hpp"

using namespace conediff;

namespace {

constexpr double kPi = std::numbers::pi;

DiscreteCurve straight_line(int n) {
    std::vector<Vec2> nodes;
    for (int i = 0; i <= n; ++i)
        nodes.push_back(Vec2{1.0 + static_cast<double>(i) / n, 0.0});
    return build_tables(std::move(nodes));
}

}  // namespace

TEST_CASE("cone invariants") {
    CHECK_THROWS_AS(Cone(kPi, 0.0), GeometryError);        // phi = pi
    CHECK_THROWS_AS(Cone(3.5, 0.0), GeometryError);        // theta1 >= pi
    CHECK_THROWS_AS(Cone(0.5, 0.5), GeometryError);        // empty opening
    CHECK_THROWS_AS(Cone(1.0, -0.1), GeometryError);       // theta2 < 0
    const Cone c(kPi / 2.0, 0.0);
    CHECK(c.opening() == doctest::Approx(kPi / 2.0));
    // Inward ray normals.
    CHECK(dot(c.e_minus(), c.dir2()) > 0.0);
    CHECK(dot(c.e_plus(), c.dir1()) > 0.0);
    CHECK(std::fabs(dot(c.e_minus(), c.dir1())) < 1e-15);
    CHECK(std::fabs(dot(c.e_plus(), c.dir2())) < 1e-15);
}

TEST_CASE("straight segment: zero curvature, exact length") {
    const DiscreteCurve line = straight_line(10);
    for (std::size_t j = 1; j + 1 < line.k.size(); ++j)
        CHECK(std::fabs(line.k[j]) < 1e-13);
    CHECK(length(line) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("uniform arcs: curvature and tangent tables are exact") {
    const Cone cone(kPi / 2.0, 0.0);
    const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 1.0), 200);
    for (std::size_t j = 0; j < arc.k.size(); ++j)
        CHECK(arc.k[j] == doctest::Approx(1.0).epsilon(1e-11));
    for (std::size_t j = 0; j < arc.nodes.size(); ++j) {
        CHECK(dot(arc.tau[j], arc.nu[j]) == 0.0);  // exact by construction
        CHECK(arc.tau[j].norm() == doctest::Approx(1.0).epsilon(1e-14));
        // nu points radially outward on a tip-centered arc.
        CHECK(dot(arc.nu[j], arc.nodes[j]) > 0.99);
    }
    // Ghost-built endpoint tangents are exactly perpendicular to the rays.
    CHECK(std::fabs(dot(arc.tau.front(), cone.dir1())) < 1e-14);
    CHECK(std::fabs(dot(arc.tau.back(), cone.dir2())) < 1e-14);
}

TEST_CASE("length of arcs converges at second order") {
    const Cone cone(2.0, 2.0 - kPi / 3.0);
    const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 2.0), 100);
    const double exact = 2.0 * kPi / 3.0;
    const double ds = exact / 100.0;
    CHECK(std::fabs(length(arc) - exact) < exact * ds * ds);

    const Cone cone2(kPi / 2.0, kPi / 4.0);
    const DiscreteCurve arc2 = make_arc(ArcSpec::with_radius(cone2, 3.0), 150);
    const double exact2 = 3.0 * kPi / 4.0;
    CHECK(std::fabs(length(arc2) - exact2) < 1e-4 * exact2);

    const Cone cq(kPi / 2.0, 0.0);
    const DiscreteCurve unit = make_arc(ArcSpec::with_radius(cq, 1.0), 200);
    CHECK(length(unit) == doctest::Approx(kPi / 2.0).epsilon(1e-5));
}

TEST_CASE("area of arcs and refinement order") {
    const Cone cq(kPi / 2.0, 0.0);
    CHECK(area(make_arc(ArcSpec::with_radius(cq, 1.0), 200)) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-5));

    const Cone c3(1.5, 1.5 - kPi / 3.0);
    CHECK(area(make_arc(ArcSpec::with_radius(c3, 2.0), 100)) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-4));

    // Refinement study on a fixed perturbed arc against the exact radial
    // graph area 1/2 ∫ rho^2 dtheta = pi/4 + eps^2 pi/8.
    PerturbationSpec spec;
    spec.base_radius = 1.0;
    spec.modes = {{2, 0.1}};
    const double exact = kPi / 4.0 + 0.01 * kPi / 8.0;
    const double e1 = std::fabs(area(perturbed_arc(cq, spec, 100)) - exact);
    const double e2 = std::fabs(area(perturbed_arc(cq, spec, 200)) - exact);
    CHECK(e1 / e2 > 3.4);
    CHECK(e1 / e2 < 4.6);
}

TEST_CASE("average curvature") {
    const Cone cone(kPi / 2.0, 0.0);
    for (const double r : {0.5, 1.0, 3.0}) {
        const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, r), 128);
        CHECK(average_curvature(arc) == doctest::Approx(1.0 / r).epsilon(1e-10));
    }
    // kbar * L -> phi under refinement on a generic compatible curve.
    PerturbationSpec spec;
    spec.base_radius = 1.0;
    spec.modes = {{1, 0.08}, {3, 0.02}};
    const auto defect = [&](int n) {
        const DiscreteCurve c = perturbed_arc(cone, spec, n);
        return std::fabs(average_curvature(c) * length(c) - cone.opening());
    };
    const double d1 = defect(100);
    const double d2 = defect(200);
    CHECK(d2 < d1);
    CHECK(d1 / d2 > 3.0);
    CHECK(d1 / d2 < 5.0);
}

TEST_CASE("synthetic curvature tables: quadrature identities") {
    // Uniform table on [0, L]: mean of kbar + eps*cos(pi s/L) is exactly kbar
    // (the cosine sums to zero on the trapezoidal grid).
    const int n = 161;
    const double len = 2.7;
    const double kbar = 0.8, eps = 0.05;
    std::vector<double> s(n), k(n);
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = len * i / (n - 1.0);
        k[static_cast<std::size_t>(i)] =
            kbar + eps * std::cos(kPi * s[static_cast<std::size_t>(i)] / len);
    }
    CHECK(table_mean(k, s) == doctest::Approx(kbar).epsilon(1e-14));

    // L * ∫ (k - kbar)^2 ds = eps^2 L^2 / 2 for the first cosine mode.
    std::vector<double> dev(k);
    for (double& v : dev) v -= kbar;
    std::vector<double> dev2(dev);
    for (std::size_t i = 0; i < dev2.size(); ++i) dev2[i] = dev[i] * dev[i];
    const double kosc = len * integrate(dev2, s);
    CHECK(kosc == doctest::Approx(eps * eps * len * len / 2.0).epsilon(1e-6));
}

TEST_CASE("oscillation of curvature") {
    const Cone cone(kPi / 2.0, 0.0);
    const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 2.0), 200);
    CHECK(oscillation_of_curvature(arc) < 1e-16);

    PerturbationSpec spec;
    spec.base_radius = 1.0;
    spec.modes = {{1, 0.05}};
    const DiscreteCurve wavy = perturbed_arc(cone, spec, 200);
    const double kosc = oscillation_of_curvature(wavy);
    CHECK(kosc > 0.0);

    // Scale invariance of Kosc and omega to round-off.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lam(-3.0, 3.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double scale = std::pow(10.0, lam(rng));
        std::vector<Vec2> scaled = wavy.nodes;
        for (Vec2& p : scaled) p *= scale;
        const DiscreteCurve sc = build_tables(std::move(scaled), cone);
        CHECK(oscillation_of_curvature(sc) ==
              doctest::Approx(kosc).epsilon(1e-12));
        CHECK(rotation_number(sc) ==
              doctest::Approx(rotation_number(wavy)).epsilon(1e-12));
    }
}

TEST_CASE("rotation number equals phi / 2 pi") {
    const Cone half(kPi / 2.0, 0.0);
    PerturbationSpec spec;
    spec.base_radius = 1.0;
    spec.modes = {{2, 0.1}};
    CHECK(rotation_number(perturbed_arc(half, spec, 300)) ==
          doctest::Approx(0.25).epsilon(1e-4));

    const Cone third(1.8, 1.8 - kPi / 3.0);
    CHECK(rotation_number(make_arc(ArcSpec::with_radius(third, 1.0), 256)) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-4));
}

TEST_CASE("make_arc") {
    const Cone cone(kPi / 2.0, 0.0);
    // Radius from area: r = sqrt(2A/phi).
    const ArcSpec spec = ArcSpec::with_area(cone, kPi / 4.0);
    CHECK(spec.radius == doctest::Approx(1.0).epsilon(1e-14));

    const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 1.0), 16);
    CHECK(rotation_number(arc) == doctest::Approx(0.25).epsilon(2e-3));
    CHECK(oscillation_of_curvature(arc) < 1e-12);

    CHECK_THROWS_AS(ArcSpec::with_radius(cone, 0.0), GeometryError);
    CHECK_THROWS_AS(ArcSpec::with_radius(cone, -1.0), GeometryError);
    CHECK_THROWS_AS(make_arc(ArcSpec::with_radius(cone, 1.0), 7), GeometryError);
}

TEST_CASE("degenerate and invalid inputs") {
    std::vector<Vec2> nodes;
    for (int i = 0; i <= 10; ++i)
        nodes.push_back(Vec2{static_cast<double>(i), 0.0});
    nodes[4] = nodes[3];
    CHECK_THROWS_AS(build_tables(std::move(nodes)), DegenerateSegmentError);

    std::vector<Vec2> few = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK_THROWS_AS(build_tables(std::move(few)), GeometryError);

    // Rotated arc: endpoints leave the rays, cone-aware build rejects it.
    const Cone cone(kPi / 2.0, 0.0);
    const DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 1.0), 32);
    const double a = 1.0 * kPi / 180.0;
    std::vector<Vec2> rot;
    for (const Vec2& p : arc.nodes)
        rot.push_back(Vec2{p.x * std::cos(a) - p.y * std::sin(a),
                           p.x * std::sin(a) + p.y * std::cos(a)});
    CHECK_THROWS_AS(build_tables(std::move(rot), cone), BoundaryViolationError);
}

TEST_CASE("area requires endpoints on rays") {
    const Cone cone(kPi / 2.0, 0.0);
    DiscreteCurve arc = make_arc(ArcSpec::with_radius(cone, 1.0), 32);
    arc.nodes.front() += Vec2{1e-3, 0.0};  // off ray 1
    CHECK_THROWS_AS(area(arc), BoundaryViolationError);
}

TEST_CASE("endpoint_derivative is exact on polynomials") {
    std::vector<double> s(7), f(7);
    for (int i = 0; i < 7; ++i) {
        const double x = 0.3 * i + 0.01 * i * i;
        s[static_cast<std::size_t>(i)] = x;
        f[static_cast<std::size_t>(i)] =
            2.0 - x + 0.5 * x * x - 0.25 * x * x * x + 0.125 * x * x * x * x;
    }
    // f'(s0) with quadratic fit is exact for quadratics; use quartic fit here.
    const double d1 = endpoint_derivative(f, s, 1, true, 5);
    const double d3 = endpoint_derivative(f, s, 3, true, 5);
    const double x0 = s[0];
    CHECK(d1 == doctest::Approx(-1.0 + x0 - 0.75 * x0 * x0 +
                                0.5 * x0 * x0 * x0).epsilon(1e-9));
    CHECK(d3 == doctest::Approx(-1.5 + 3.0 * x0).epsilon(1e-7));
    const double d1r = endpoint_derivative(f, s, 1, false, 5);
    const double xn = s[6];
    CHECK(d1r == doctest::Approx(-1.0 + xn - 0.75 * xn * xn +
                                 0.5 * xn * xn * xn).epsilon(1e-9));
}
