// Timing comparison of the serial reference kernels against the OpenMP
// implementations, plus whole flow steps under both backends.
//
//   conediff_bench [--sizes n1,n2,...] [--reps R]

#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conediff/flow.hpp"
#include "conediff/geometry.hpp"
#include "conediff/initgen.hpp"
#include "conediff/kernels.hpp"

namespace {

using namespace conediff;
using Clock = std::chrono::steady_clock;

double time_ms(int reps, const auto& fn) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_kernels(std::size_t n, int reps) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    std::vector<Vec2> pts(n);
    std::vector<double> s(n), f(n), g(n), w(n), out(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += uni(rng);
        s[i] = acc;
        pts[i] = Vec2{std::cos(acc), std::sin(acc)};
        f[i] = uni(rng);
        g[i] = uni(rng);
        w[i] = uni(rng);
    }
    std::vector<double> scratch(n);
    std::vector<double> d1(n - 2);

    struct Row {
        const char* name;
        double serial_ms;
        double par_ms;
    };
    std::vector<Row> rows;
    const auto add = [&](const char* name, auto fs, auto fp) {
        rows.push_back({name, time_ms(reps, fs), time_ms(reps, fp)});
    };

    add("segment_lengths",
        [&] { kernels::serial::segment_lengths(pts, std::span(out).first(n - 1)); },
        [&] { kernels::par::segment_lengths(pts, std::span(out).first(n - 1)); });
    add("trapezoid_weights",
        [&] { kernels::serial::trapezoid_weights(s, w); },
        [&] { kernels::par::trapezoid_weights(s, w); });
    add("diff1", [&] { kernels::serial::diff1(f, s, 1, d1); },
        [&] { kernels::par::diff1(f, s, 1, d1); });
    add("diff2", [&] { kernels::serial::diff2(f, s, 1, d1); },
        [&] { kernels::par::diff2(f, s, 1, d1); });
    add("mul3_store", [&] { kernels::serial::mul3_store(f, g, w, scratch); },
        [&] { kernels::par::mul3_store(f, g, w, scratch); });
    add("max_abs", [&] { (void)kernels::serial::max_abs(f); },
        [&] { (void)kernels::par::max_abs(f); });

    std::printf("kernels at n = %zu (%d reps, %d threads)\n", n, reps,
                kernels::parallel_threads());
    std::printf("  %-18s %12s %12s %8s\n", "kernel", "serial[ms]", "omp[ms]",
                "speedup");
    for (const Row& r : rows)
        std::printf("  %-18s %12.4f %12.4f %8.2f\n", r.name, r.serial_ms,
                    r.par_ms, r.serial_ms / r.par_ms);
}

void bench_flow(int n_segments, int reps) {
    const Cone cone(std::numbers::pi / 2.0, 0.0);
    PerturbationSpec spec;
    spec.base_radius = 1.0;
    spec.modes = {{1, 0.05}};
    const DiscreteCurve curve = perturbed_arc(cone, spec, n_segments);
    FlowParams p;
    p.m = 1;
    p.rho_min = 1e-3;
    const double a0 = area(curve);
    const double dt = 1e-6;

    const auto step_once = [&] {
        DiscreteCurve out;
        (void)flow_substep(curve, dt, p.m, p, a0, out);
    };
    kernels::set_backend(kernels::Backend::Serial);
    const double ser = time_ms(reps, step_once);
    kernels::set_backend(kernels::Backend::Parallel);
    const double par = time_ms(reps, step_once);
    kernels::set_backend(kernels::Backend::Auto);
    std::printf("flow substep at N = %-6d serial %.4f ms, omp %.4f ms (x%.2f)\n",
                n_segments, ser, par, ser / par);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::size_t> sizes = {10000, 100000, 1000000};
    int reps = 20;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--sizes" && i + 1 < argc) {
            sizes.clear();
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ',')) sizes.push_back(std::stoul(item));
        } else if (arg == "--reps" && i + 1 < argc) {
            reps = std::stoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--sizes n1,n2,...] [--reps R]\n",
                         argv[0]);
            return 2;
        }
    }
    for (std::size_t n : sizes) bench_kernels(n, reps);
    std::printf("\n");
    for (int n : {200, 2000, 20000}) bench_flow(n, std::max(3, reps / 4));
    return 0;
}
