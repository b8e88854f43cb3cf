#pragma once

#include <cstddef>
#include <span>

#include "conediff/vec2.hpp"

// Data-parallel inner loops shared by the geometry and flow modules.
//
// Every kernel has two implementations: a plain serial reference
// (kernels_serial.cpp) and an OpenMP one (kernels_omp.cpp).  The dispatch
// picks one at runtime via set_backend(); Backend::Auto uses the parallel
// path only above a size threshold where it pays off.
//
// Reductions accumulate per-element contributions into a scratch array and
// sum it in index order, so both backends produce bit-identical results
// regardless of thread count.

namespace conediff::kernels {

enum class Backend { Auto, Serial, Parallel };

void set_backend(Backend b);
Backend backend();

// Resolved decision for a loop of size n under the current backend.
bool use_parallel(std::size_t n);

// Number of OpenMP threads the parallel backend would use (1 without OpenMP).
int parallel_threads();

// h[i] = |pts[i+1] - pts[i]|, i = 0 .. n-2.
void segment_lengths(std::span<const Vec2> pts, std::span<double> h);

// Trapezoidal dual weights of an increasing abscissa table:
// w[0] = (s1-s0)/2, w[i] = (s[i+1]-s[i-1])/2, w[n-1] = (s[n-1]-s[n-2])/2.
void trapezoid_weights(std::span<const double> s, std::span<double> w);

// Three-point first/second derivative tables with respect to a (possibly
// nonuniform) abscissa, exact on quadratics.  Inputs carry `pad` ghost
// entries on each side; out receives vals.size() - 2*pad samples.
void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);
void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);

// Deterministic reductions.
double weighted_sum(std::span<const double> f, std::span<const double> w);
double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w);

// pts[i] *= c.
void scale_points(std::span<Vec2> pts, double c);
// pts[i] += c * d[i].
void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c);

double max_abs(std::span<const double> v);
double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b);
void minmax(std::span<const double> v, double& lo, double& hi);

namespace serial {
void segment_lengths(std::span<const Vec2> pts, std::span<double> h);
void trapezoid_weights(std::span<const double> s, std::span<double> w);
void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);
void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);
void mul_store(std::span<const double> f, std::span<const double> w,
               std::span<double> scratch);
void mul3_store(std::span<const double> f, std::span<const double> g,
                std::span<const double> w, std::span<double> scratch);
void scale_points(std::span<Vec2> pts, double c);
void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c);
double max_abs(std::span<const double> v);
double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b);
void minmax(std::span<const double> v, double& lo, double& hi);
}  // namespace serial

namespace par {
void segment_lengths(std::span<const Vec2> pts, std::span<double> h);
void trapezoid_weights(std::span<const double> s, std::span<double> w);
void diff1(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2(std::span<const double> vals, std::span<const double> x, int pad,
           std::span<double> out);
void diff2_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);
void diff1_vec(std::span<const Vec2> vals, std::span<const double> x, int pad,
               std::span<Vec2> out);
void mul_store(std::span<const double> f, std::span<const double> w,
               std::span<double> scratch);
void mul3_store(std::span<const double> f, std::span<const double> g,
                std::span<const double> w, std::span<double> scratch);
void scale_points(std::span<Vec2> pts, double c);
void add_scaled(std::span<Vec2> pts, std::span<const Vec2> d, double c);
double max_abs(std::span<const double> v);
double max_node_distance(std::span<const Vec2> a, std::span<const Vec2> b);
void minmax(std::span<const double> v, double& lo, double& hi);
}  // namespace par

}  // namespace conediff::kernels
