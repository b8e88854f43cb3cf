#include "conediff/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace conediff {

namespace {

// Shortest decimal that round-trips the exact double.
std::string dump_double(double v) {
    std::array<char, 40> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

double parse_double_strict(std::string_view sv, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size())
        throw IoError(std::string("malformed number in ") + what + ": '" +
                      std::string(sv) + "'");
    return v;
}

}  // namespace

void write_series(std::span<const QuantityRecord> trajectory,
                  std::span<const ResidualRecord> residuals, std::ostream& os) {
    os << kSeriesHeader << '\n';
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const QuantityRecord& q = trajectory[i];
        const ResidualRecord r =
            i < residuals.size() ? residuals[i] : ResidualRecord{};
        const std::array<double, kSeriesColumns> row = {
            q.t, q.L, q.A, q.kbar, q.omega, q.Kosc, q.k_l2sq, q.ks_l2sq,
            q.kss_l2sq, q.rho_minus, q.rho_plus, q.dt, r.r_L, r.r_A, r.r_kbar,
            r.r_k2, r.r_Kosc};
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << dump_double(row[c]);
        }
        os << '\n';
    }
}

void write_series_file(const RunResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_series(result.trajectory, result.residuals, out);
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<std::array<double, kSeriesColumns>> read_series(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("series: empty stream");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSeriesHeader) throw IoError("series: unexpected header");
    std::vector<std::array<double, kSeriesColumns>> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, kSeriesColumns> row{};
        std::size_t pos = 0;
        for (int c = 0; c < kSeriesColumns; ++c) {
            const std::size_t next = line.find(',', pos);
            const bool last = c == kSeriesColumns - 1;
            if (last != (next == std::string::npos))
                throw IoError("series: wrong column count");
            const std::string_view field(line.data() + pos,
                                         (last ? line.size() : next) - pos);
            row[static_cast<std::size_t>(c)] =
                parse_double_strict(field, "series");
            pos = last ? line.size() : next + 1;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::array<double, kSeriesColumns>> read_series_file(
    const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_series(in);
}

Snapshot make_snapshot(const FlowState& state) {
    Snapshot snap;
    snap.t = state.t;
    snap.m = state.m;
    if (state.curve.cone) {
        snap.theta1 = state.curve.cone->theta1;
        snap.theta2 = state.curve.cone->theta2;
    }
    const std::size_t n = state.curve.nodes.size();
    snap.x.resize(n);
    snap.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        snap.x[i] = state.curve.nodes[i].x;
        snap.y[i] = state.curve.nodes[i].y;
    }
    snap.s = state.curve.s;
    snap.k = state.curve.k;
    return snap;
}

void write_snapshot(const FlowState& state, std::ostream& os) {
    const Snapshot snap = make_snapshot(state);
    nlohmann::ordered_json j;
    j["schema"] = "conediff-snapshot";
    j["version"] = snap.version;
    j["t"] = snap.t;
    j["m"] = snap.m;
    j["theta1"] = snap.theta1;
    j["theta2"] = snap.theta2;
    j["x"] = snap.x;
    j["y"] = snap.y;
    j["s"] = snap.s;
    j["k"] = snap.k;
    os << j.dump(2) << '\n';
}

void write_snapshot_file(const FlowState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_snapshot(state, out);
    if (!out) throw IoError("failed writing '" + path + "'");
}

Snapshot read_snapshot(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("snapshot: ") + e.what());
    }
    if (j.value("schema", "") != "conediff-snapshot")
        throw IoError("snapshot: missing schema marker");
    Snapshot snap;
    snap.version = j.at("version").get<int>();
    snap.t = j.at("t").get<double>();
    snap.m = j.at("m").get<int>();
    snap.theta1 = j.at("theta1").get<double>();
    snap.theta2 = j.at("theta2").get<double>();
    snap.x = j.at("x").get<std::vector<double>>();
    snap.y = j.at("y").get<std::vector<double>>();
    snap.s = j.at("s").get<std::vector<double>>();
    snap.k = j.at("k").get<std::vector<double>>();
    if (snap.x.size() != snap.y.size() || snap.x.size() != snap.s.size() ||
        snap.x.size() != snap.k.size())
        throw IoError("snapshot: array lengths differ");
    return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_snapshot(in);
}

ViewBox ViewBox::around(const DiscreteCurve& curve) {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // include the tip
    for (const Vec2& p : curve.nodes) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double w = x1 - x0, h = y1 - y0;
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double we = std::max(w, 1e-12) * 1.2, he = std::max(h, 1e-12) * 1.2;
    return {cx - 0.5 * we, cy - 0.5 * he, we, he};
}

namespace {

std::string svg_num(double v) {
    std::array<char, 48> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.8g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace

void render_svg(const FlowState& state, const ViewBox& box, std::ostream& os) {
    if (!state.curve.cone)
        throw IoError("render_svg requires a cone-built curve");
    const Cone& cone = *state.curve.cone;
    const double height_px = kSvgWidthPx * box.h / box.w;
    const double stroke = box.w / kSvgWidthPx * 1.5;
    // Rays extend well beyond the frame; the viewBox clips them.
    const double reach = 4.0 * (box.w + box.h);
    const Vec2 r1 = reach * cone.dir1();
    const Vec2 r2 = reach * cone.dir2();

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << svg_num(kSvgWidthPx) << "\" height=\"" << svg_num(height_px)
       << "\" viewBox=\"" << svg_num(box.x) << ' ' << svg_num(-box.y - box.h)
       << ' ' << svg_num(box.w) << ' ' << svg_num(box.h) << "\">\n";
    // Flip y so the mathematical orientation is upright.
    os << "<g transform=\"scale(1,-1)\">\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << svg_num(3.0 * stroke)
       << "\" fill=\"#202020\"/>\n";
    os << "<path d=\"M 0 0 L " << svg_num(r1.x) << ' ' << svg_num(r1.y)
       << "\" stroke=\"#444444\" stroke-width=\"" << svg_num(stroke)
       << "\" fill=\"none\"/>\n";
    os << "<path d=\"M 0 0 L " << svg_num(r2.x) << ' ' << svg_num(r2.y)
       << "\" stroke=\"#444444\" stroke-width=\"" << svg_num(stroke)
       << "\" fill=\"none\"/>\n";
    std::string d = "M";
    for (std::size_t i = 0; i < state.curve.nodes.size(); ++i) {
        const Vec2& p = state.curve.nodes[i];
        if (i == 1) d += " L";
        d += ' ' + svg_num(p.x) + ' ' + svg_num(p.y);
    }
    os << "<path d=\"" << d << "\" stroke=\"#0b61c4\" stroke-width=\""
       << svg_num(1.5 * stroke) << "\" fill=\"none\"/>\n";
    os << "</g>\n</svg>\n";
}

void render_svg_file(const FlowState& state, const ViewBox& box,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    render_svg(state, box, out);
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace conediff
