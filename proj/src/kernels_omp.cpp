#include "conediff/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP implementations.  Pure maps parallelize over elements; min/max
// reductions are exact in any order, so `reduction` clauses are safe.  The
// weighted-sum kernels only fill the scratch array here; the index-ordered
// summation happens in the dispatch layer, which is what keeps results
// bit-identical to the serial backend.

namespace conediff::kernels::par {

#ifndef _OPENMP
// Without OpenMP this backend degrades to the reference implementation.
void segment_lengths(std::span<const Vec2> pts, std::span<double> h) { serial::segment_lengths(pts, h); }
void trapezoid_weights(std::span<const double> s, std::span<double> w) { serial::trapezoid_weights(s, w); }
void diff1(std::span<const double> v, std::span<const double> x, int p, std::span<double> o) { serial::diff1(v, x, p, o); }
void diff2(std::span<const double> v, std::span<const double> x, int p, std::span<double> o) { serial::diff2(v, x, p, o); }
void diff2_vec(std::span<const Vec2> v, std::span<const double> x, int p, std::span<Vec2> o) { serial::diff2_vec(v, x, p, o); }
void diff1_vec(std::span<const Vec2> v, std::span<const double> x, int p, std::span<Vec2> o) { serial::diff1_vec(v, x, p, o); }
void mul_store(std::span<const double> f, std::span<const double> w, std::span<double> s) { serial::mul_store(f, w, s); }
void mul3_store(std::span<const double> f, std::span<const double> g, std::span<const double> w, std::span<double> s) { serial::mul3_store(f, g, w, s); }
void scale_points(std::span<Vec2> pts, double c) { serial::scale_points(pts, c); }
void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c) { serial::add_scaled(pts, d, c); }
double max_abs(std::span<const double> v) { return serial::max_abs(v); }
double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b) { return serial::max_node_distance(a, b); }
void minmax(std::span<const double> v, double& lo, double& hi) { serial::minmax(v, lo, hi); }
#else

void segment_lengths(std::span<const Vec2> pts, std::span<double> h) {
    const std::int64_t n = static_cast<std::int64_t>(h.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        h[i] = (pts[i + 1] - pts[i]).norm();
}

void trapezoid_weights(std::span<const double> s, std::span<double> w) {
    const std::int64_t n = static_cast<std::int64_t>(s.size());
    w[0] = 0.5 * (s[1] - s[0]);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 1; i < n - 1; ++i) w[i] = 0.5 * (s[i + 1] - s[i - 1]);
    w[n - 1] = 0.5 * (s[n - 1] - s[n - 2]);
}

void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t j = i + pad;
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = -h2 / (h1 * (h1 + h2)) * vals[j - 1] +
                 (h2 - h1) / (h1 * h2) * vals[j] +
                 h1 / (h2 * (h1 + h2)) * vals[j + 1];
    }
}

void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t j = i + pad;
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = 2.0 / (h1 + h2) *
                 ((vals[j + 1] - vals[j]) / h2 - (vals[j] - vals[j - 1]) / h1);
    }
}

void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t j = i + pad;
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        const double c = 2.0 / (h1 + h2);
        out[i] = ((vals[j + 1] - vals[j]) / h2 - (vals[j] - vals[j - 1]) / h1) * c;
    }
}

void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t j = i + pad;
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = vals[j - 1] * (-h2 / (h1 * (h1 + h2))) +
                 vals[j] * ((h2 - h1) / (h1 * h2)) +
                 vals[j + 1] * (h1 / (h2 * (h1 + h2)));
    }
}

void mul_store(std::span<const double> f, std::span<const double> w,
               std::span<double> scratch) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) scratch[i] = f[i] * w[i];
}

void mul3_store(std::span<const double> f, std::span<const double> g,
                std::span<const double> w, std::span<double> scratch) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) scratch[i] = f[i] * g[i] * w[i];
}

void scale_points(std::span<Vec2> pts, double c) {
    const std::int64_t n = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) pts[i] *= c;
}

void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c) {
    const std::int64_t n = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) pts[i] += c * d[i];
}

double max_abs(std::span<const double> v) {
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
}

double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, (a[i] - b[i]).norm());
    return m;
}

void minmax(std::span<const double> v, double& lo, double& hi) {
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    double l = v[0], h = v[0];
#pragma omp parallel for schedule(static) reduction(min : l) reduction(max : h)
    for (std::int64_t i = 0; i < n; ++i) {
        l = std::min(l, v[i]);
        h = std::max(h, v[i]);
    }
    lo = l;
    hi = h;
}

#endif  // _OPENMP

}  // namespace conediff::kernels::par
