#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "conediff/kernels.hpp"

using namespace conediff;

namespace {

struct Fixture {
    std::vector<Vec2> pts;
    std::vector<double> s, f, g, w;

    explicit Fixture(std::size_t n, unsigned seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.05, 1.0);
        std::uniform_real_distribution<double> val(-2.0, 2.0);
        double acc = 0.0;
        pts.resize(n);
        s.resize(n);
        f.resize(n);
        g.resize(n);
        w.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            acc += uni(rng);
            s[i] = acc;
            pts[i] = Vec2{val(rng), val(rng)};
            f[i] = val(rng);
            g[i] = val(rng);
            w[i] = uni(rng);
        }
    }
};

}  // namespace

TEST_CASE("serial and parallel backends are bit-identical") {
    for (const std::size_t n : {16UL, 255UL, 4096UL, 20001UL}) {
        const Fixture fx(n, 1234 + static_cast<unsigned>(n));

        std::vector<double> a(n), b(n);
        kernels::serial::segment_lengths(fx.pts, std::span(a).first(n - 1));
        kernels::par::segment_lengths(fx.pts, std::span(b).first(n - 1));
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(a[i] == b[i]);

        kernels::serial::trapezoid_weights(fx.s, a);
        kernels::par::trapezoid_weights(fx.s, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);

        std::vector<double> da(n - 2), db(n - 2);
        kernels::serial::diff1(fx.f, fx.s, 1, da);
        kernels::par::diff1(fx.f, fx.s, 1, db);
        for (std::size_t i = 0; i + 2 < n; ++i) CHECK(da[i] == db[i]);
        kernels::serial::diff2(fx.f, fx.s, 1, da);
        kernels::par::diff2(fx.f, fx.s, 1, db);
        for (std::size_t i = 0; i + 2 < n; ++i) CHECK(da[i] == db[i]);

        std::vector<Vec2> va(n - 2), vb(n - 2);
        kernels::serial::diff2_vec(fx.pts, fx.s, 1, va);
        kernels::par::diff2_vec(fx.pts, fx.s, 1, vb);
        for (std::size_t i = 0; i + 2 < n; ++i) CHECK(va[i] == vb[i]);
        kernels::serial::diff1_vec(fx.pts, fx.s, 1, va);
        kernels::par::diff1_vec(fx.pts, fx.s, 1, vb);
        for (std::size_t i = 0; i + 2 < n; ++i) CHECK(va[i] == vb[i]);

        kernels::serial::mul_store(fx.f, fx.w, a);
        kernels::par::mul_store(fx.f, fx.w, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
        kernels::serial::mul3_store(fx.f, fx.g, fx.w, a);
        kernels::par::mul3_store(fx.f, fx.g, fx.w, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);

        CHECK(kernels::serial::max_abs(fx.f) == kernels::par::max_abs(fx.f));
        CHECK(kernels::serial::max_node_distance(fx.pts, fx.pts) ==
              kernels::par::max_node_distance(fx.pts, fx.pts));
        double lo1, hi1, lo2, hi2;
        kernels::serial::minmax(fx.f, lo1, hi1);
        kernels::par::minmax(fx.f, lo2, hi2);
        CHECK(lo1 == lo2);
        CHECK(hi1 == hi2);
    }
}

TEST_CASE("weighted reductions are backend independent") {
    const Fixture fx(30000, 77);
    kernels::set_backend(kernels::Backend::Serial);
    const double s1 = kernels::weighted_sum(fx.f, fx.w);
    const double d1 = kernels::weighted_dot(fx.f, fx.g, fx.w);
    kernels::set_backend(kernels::Backend::Parallel);
    const double s2 = kernels::weighted_sum(fx.f, fx.w);
    const double d2 = kernels::weighted_dot(fx.f, fx.g, fx.w);
    kernels::set_backend(kernels::Backend::Auto);
    CHECK(s1 == s2);
    CHECK(d1 == d2);
}

TEST_CASE("difference tables converge at second order on a smooth function") {
    const auto run = [](std::size_t n) {
        std::vector<double> s(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Mildly nonuniform abscissa.
            const double u = static_cast<double>(i) / static_cast<double>(n - 1);
            s[i] = u + 0.1 * std::sin(3.0 * u);
            f[i] = std::sin(2.0 * s[i]);
        }
        std::vector<double> d1(n - 2), d2(n - 2);
        kernels::diff1(f, s, 1, d1);
        kernels::diff2(f, s, 1, d2);
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            const double x = s[i + 1];
            e1 = std::max(e1, std::fabs(d1[i] - 2.0 * std::cos(2.0 * x)));
            e2 = std::max(e2, std::fabs(d2[i] + 4.0 * std::sin(2.0 * x)));
        }
        return std::pair{e1, e2};
    };
    const auto [c1, c2] = run(101);
    const auto [f1, f2] = run(201);
    CHECK(c1 / f1 > 3.0);  // ~4 for second order
    CHECK(c2 / f2 > 3.0);
    CHECK(f1 < 1e-3);
    CHECK(f2 < 1e-2);
}

TEST_CASE("trapezoid weights sum to the span") {
    const Fixture fx(500, 5);
    std::vector<double> w(fx.s.size());
    kernels::trapezoid_weights(fx.s, w);
    double total = 0.0;
    for (double x : w) total += x;
    CHECK(total == doctest::Approx(fx.s.back() - fx.s.front()).epsilon(1e-13));
}
