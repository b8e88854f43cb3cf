#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conediff/config.hpp"
#include "conediff/diagnostics.hpp"
#include "conediff/io.hpp"
#include "conediff/sweep.hpp"
#include "conediff/verify.hpp"

namespace {

using namespace conediff;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitAbnormal = 3;  // StepFloor

struct RunArtifacts {
    PreparedRun prepared;
    RunResult result;
};

RunArtifacts execute(const std::string& config_path) {
    const RunConfig cfg = parse_config_file(config_path);
    PreparedRun prepared = prepare(cfg);
    RunResult result = run_flow(prepared.initial, prepared.params);
    return {std::move(prepared), std::move(result)};
}

void persist(const RunArtifacts& art) {
    namespace fs = std::filesystem;
    const std::string& dir = art.prepared.out_dir;
    fs::create_directories(dir);
    write_series_file(art.result, dir + "/series.csv");

    char name[64];
    for (std::size_t i = 0; i < art.result.snapshots.size(); ++i) {
        std::snprintf(name, sizeof name, "/snapshot_%06zu.json", i);
        write_snapshot_file(art.result.snapshots[i], dir + name);
    }
    const ViewBox frame = ViewBox::around(art.result.snapshots.front().curve);
    if (art.prepared.svg_every > 0) {
        for (std::size_t i = 0; i < art.result.snapshots.size();
             i += static_cast<std::size_t>(art.prepared.svg_every)) {
            std::snprintf(name, sizeof name, "/frame_%06zu.svg", i);
            render_svg_file(art.result.snapshots[i], frame, dir + name);
        }
    }
    std::snprintf(name, sizeof name, "/frame_final.svg");
    render_svg_file(art.result.snapshots.back(), frame, dir + name);
}

void print_summary(const RunResult& r) {
    std::cout << "termination=" << to_string(r.termination.kind)
              << " t=" << r.termination.t_final << " steps=" << r.accepted
              << " rejected=" << r.rejected << " remeshes=" << r.remeshes
              << "\n  " << r.termination.detail << "\n";
}

int cmd_run(const std::string& config_path) {
    const RunArtifacts art = execute(config_path);
    persist(art);
    print_summary(art.result);
    return art.result.termination.kind == TerminationStatus::Kind::StepFloor
               ? kExitAbnormal
               : kExitOk;
}

int cmd_verify(const std::string& config_path) {
    const RunArtifacts art = execute(config_path);
    persist(art);
    print_summary(art.result);
    const VerifyReport report =
        verify_trajectory(art.result, art.prepared.checks);
    std::cout << report.text();
    if (art.result.termination.kind == TerminationStatus::Kind::StepFloor)
        return kExitAbnormal;
    return report.pass ? kExitOk : kExitCheckFailure;
}

int cmd_arc(double theta1, double theta2, double radius, double area_in,
            int n) {
    const Cone cone(theta1, theta2);
    if ((radius > 0.0) == (area_in > 0.0))
        throw ConfigError("exactly one of --radius or --area is required");
    const ArcSpec spec = radius > 0.0 ? ArcSpec::with_radius(cone, radius)
                                      : ArcSpec::with_area(cone, area_in);
    FlowState state;
    state.curve = make_arc(spec, n);
    write_snapshot(state, std::cout);
    return kExitOk;
}

int cmd_threshold(double omega) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", smallness_threshold(omega));
    std::cout << buf << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv) {
    const RunConfig base = parse_config_file(config_path);
    std::vector<std::string> values;
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(item);
    if (values.empty()) throw ConfigError("sweep needs at least one value");

    const std::vector<SweepEntry> entries = run_sweep(base, param, values);
    const std::string summary = sweep_summary_csv(param, entries);
    std::filesystem::create_directories(base.out_dir);
    {
        std::ofstream out(base.out_dir + "/sweep_summary.csv",
                          std::ios::binary);
        out << summary;
    }
    std::cout << summary;
    bool abnormal = false;
    for (const SweepEntry& e : entries) {
        if (!e.ok) throw ConfigError("sweep value '" + e.value + "': " + e.error);
        abnormal |= e.kind == TerminationStatus::Kind::StepFloor;
    }
    return abnormal ? kExitAbnormal : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curve diffusion flow in a cone: simulator and audit harness"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute a flow and persist outputs");
    run->add_option("config", config_path, "config file")->required();

    auto* verify =
        app.add_subcommand("verify", "run and audit; nonzero exit on failure");
    verify->add_option("config", config_path, "config file")->required();

    double theta1 = 0.0, theta2 = 0.0, radius = 0.0, area_in = 0.0,
           omega = 0.0;
    int n = 200;
    auto* arc = app.add_subcommand("arc", "print a stationary arc snapshot");
    arc->add_option("--theta1", theta1, "upper ray angle (rad)")->required();
    arc->add_option("--theta2", theta2, "lower ray angle (rad)")->required();
    arc->add_option("--radius", radius, "arc radius");
    arc->add_option("--area", area_in, "enclosed sector area");
    arc->add_option("-n,--nodes", n, "segment count");

    auto* thr = app.add_subcommand("threshold",
                                   "print the oscillation smallness threshold");
    thr->add_option("--omega", omega, "rotation number in (0, 1/2)")->required();

    std::string param, values_csv;
    auto* sweep = app.add_subcommand("sweep", "parallel parameter sweep");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("--param", param, "config key to vary")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (verify->parsed()) return cmd_verify(config_path);
        if (arc->parsed()) return cmd_arc(theta1, theta2, radius, area_in, n);
        if (thr->parsed()) return cmd_threshold(omega);
        if (sweep->parsed()) return cmd_sweep(config_path, param, values_csv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const GeometryError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DiagnosticsError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAbnormal;
    }
    return kExitOk;
}
