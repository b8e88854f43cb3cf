#include "conediff/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conediff::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::Auto};

// Below this size the fork/join overhead dominates for these O(n) loops.
constexpr std::size_t kAutoThreshold = 4096;

Backend initial_backend() {
    if (const char* env = std::getenv("CONEDIFF_BACKEND")) {
        if (std::strcmp(env, "serial") == 0) return Backend::Serial;
        if (std::strcmp(env, "parallel") == 0) return Backend::Parallel;
    }
    return Backend::Auto;
}

struct EnvInit {
    EnvInit() { g_backend.store(initial_backend()); }
} env_init;

thread_local std::vector<double> t_scratch;

double ordered_sum(std::span<const double> scratch) {
    double acc = 0.0;
    for (double v : scratch) acc += v;
    return acc;
}

}  // namespace

void set_backend(Backend b) { g_backend.store(b); }
Backend backend() { return g_backend.load(); }

bool use_parallel(std::size_t n) {
    switch (g_backend.load()) {
        case Backend::Serial: return false;
        case Backend::Parallel: return true;
        case Backend::Auto: break;
    }
#ifdef _OPENMP
    return n >= kAutoThreshold;
#else
    (void)n;
    return false;
#endif
}

int parallel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void segment_lengths(std::span<const Vec2> pts, std::span<double> h) {
    use_parallel(h.size()) ? par::segment_lengths(pts, h)
                           : serial::segment_lengths(pts, h);
}

void trapezoid_weights(std::span<const double> s, std::span<double> w) {
    use_parallel(s.size()) ? par::trapezoid_weights(s, w)
                           : serial::trapezoid_weights(s, w);
}

void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    use_parallel(out.size()) ? par::diff1(vals, x, pad, out)
                             : serial::diff1(vals, x, pad, out);
}

void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out) {
    use_parallel(out.size()) ? par::diff2(vals, x, pad, out)
                             : serial::diff2(vals, x, pad, out);
}

void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    use_parallel(out.size()) ? par::diff2_vec(vals, x, pad, out)
                             : serial::diff2_vec(vals, x, pad, out);
}

void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out) {
    use_parallel(out.size()) ? par::diff1_vec(vals, x, pad, out)
                             : serial::diff1_vec(vals, x, pad, out);
}

double weighted_sum(std::span<const double> f, std::span<const double> w) {
    t_scratch.resize(f.size());
    std::span<double> scratch(t_scratch.data(), f.size());
    use_parallel(f.size()) ? par::mul_store(f, w, scratch)
                           : serial::mul_store(f, w, scratch);
    return ordered_sum(scratch);
}

double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w) {
    t_scratch.resize(f.size());
    std::span<double> scratch(t_scratch.data(), f.size());
    use_parallel(f.size()) ? par::mul3_store(f, g, w, scratch)
                           : serial::mul3_store(f, g, w, scratch);
    return ordered_sum(scratch);
}

void scale_points(std::span<Vec2> pts, double c) {
    use_parallel(pts.size()) ? par::scale_points(pts, c)
                             : serial::scale_points(pts, c);
}

void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c) {
    use_parallel(pts.size()) ? par::add_scaled(pts, d, c)
                             : serial::add_scaled(pts, d, c);
}

double max_abs(std::span<const double> v) {
    return use_parallel(v.size()) ? par::max_abs(v) : serial::max_abs(v);
}

double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    return use_parallel(a.size()) ? par::max_node_distance(a, b)
                                  : serial::max_node_distance(a, b);
}

void minmax(std::span<const double> v, double& lo, double& hi) {
    use_parallel(v.size()) ? par::minmax(v, lo, hi) : serial::minmax(v, lo, hi);
}

}  // namespace conediff::kernels
