#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "conediff/flow.hpp"

namespace conediff {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSeriesHeader =
    "t,L,A,kbar,omega,Kosc,k_l2sq,ks_l2sq,kss_l2sq,rho_minus,rho_plus,dt,"
    "r_L,r_A,r_kbar,r_k2,r_Kosc";
inline constexpr int kSeriesColumns = 17;

// One CSV row per record; shortest round-trip decimal so that parsing the
// file reproduces the doubles bit for bit.
void write_series(std::span<const QuantityRecord> trajectory,
                  std::span<const ResidualRecord> residuals, std::ostream& os);
void write_series_file(const RunResult& result, const std::string& path);

std::vector<std::array<double, kSeriesColumns>> read_series(std::istream& is);
std::vector<std::array<double, kSeriesColumns>> read_series_file(
    const std::string& path);

// Snapshot document: schema version, time, flow order, cone angles and the
// parallel node arrays x, y, s, k.
struct Snapshot {
    int version = 1;
    double t = 0.0;
    int m = 1;
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::vector<double> x, y, s, k;
};

Snapshot make_snapshot(const FlowState& state);
void write_snapshot(const FlowState& state, std::ostream& os);
void write_snapshot_file(const FlowState& state, const std::string& path);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

// Fixed world-coordinate frame for SVG rendering.
struct ViewBox {
    double x = 0.0, y = 0.0, w = 1.0, h = 1.0;

    // Bounding box of the curve and the tip, inflated to 1.2x.
    static ViewBox around(const DiscreteCurve& curve);
};

// Draws the two rays, a tip marker and the curve polyline (exactly three
// path elements); deterministic byte output for a given state and frame.
void render_svg(const FlowState& state, const ViewBox& box, std::ostream& os);
void render_svg_file(const FlowState& state, const ViewBox& box,
                     const std::string& path);

inline constexpr double kSvgWidthPx = 800.0;

}  // namespace conediff
