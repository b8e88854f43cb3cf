#include "conediff/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

// Reference implementations.  Kept deliberately plain: the OpenMP versions in
// kernels_omp.cpp must reproduce these bit for bit (see test_kernels.cpp).

namespace conediff::kernels::serial {

void segment_lengths(std::span<const Vec2> pts, std::span<double> h) {
    assert(h.size() + 1 == pts.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = (pts[i + 1] - pts[i]).norm();
}

void trapezoid_weights(std::span<const double> s, std::span<double> w) {
    assert(w.size() == s.size());
    const std::size_t n = s.size();
    w[0] = 0.5 * (s[1] - s[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (s[i + 1] - s[i - 1]);
    w[n - 1] = 0.5 * (s[n - 1] - s[n - 2]);
}

void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    assert(vals.size() == x.size());
    assert(out.size() + 2 * static_cast<std::size_t>(pad) >= vals.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(pad);
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = -h2 / (h1 * (h1 + h2)) * vals[j - 1] +
                 (h2 - h1) / (h1 * h2) * vals[j] +
                 h1 / (h2 * (h1 + h2)) * vals[j + 1];
    }
}

void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(pad);
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = 2.0 / (h1 + h2) *
                 ((vals[j + 1] - vals[j]) / h2 - (vals[j] - vals[j - 1]) / h1);
    }
}

void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(pad);
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        const double c = 2.0 / (h1 + h2);
        out[i] = ((vals[j + 1] - vals[j]) / h2 - (vals[j] - vals[j - 1]) / h1) * c;
    }
}

void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(pad);
        const double h1 = x[j] - x[j - 1];
        const double h2 = x[j + 1] - x[j];
        out[i] = vals[j - 1] * (-h2 / (h1 * (h1 + h2))) +
                 vals[j] * ((h2 - h1) / (h1 * h2)) +
                 vals[j + 1] * (h1 / (h2 * (h1 + h2)));
    }
}

void mul_store(std::span<const double> f, std::span<const double> w,
               std::span<double> scratch) {
    for (std::size_t i = 0; i < f.size(); ++i) scratch[i] = f[i] * w[i];
}

void mul3_store(std::span<const double> f, std::span<const double> g,
                std::span<const double> w, std::span<double> scratch) {
    for (std::size_t i = 0; i < f.size(); ++i) scratch[i] = f[i] * g[i] * w[i];
}

void scale_points(std::span<Vec2> pts, double c) {
    for (auto& p : pts) p *= c;
}

void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c) {
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] += c * d[i];
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, (a[i] - b[i]).norm());
    return m;
}

void minmax(std::span<const double> v, double& lo, double& hi) {
    lo = v[0];
    hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
}

}  // namespace conediff::kernels::serial
