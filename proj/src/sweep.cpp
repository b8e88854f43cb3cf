#include "conediff/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <thread>

#include "conediff/diagnostics.hpp"
#include "conediff/io.hpp"

namespace conediff {

namespace {

int thread_budget(int requested) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("CONEDIFF_THREADS")) {
        int cap = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
        if (ec == std::errc() && cap > 0) n = std::min(n, cap);
    }
    return n;
}

SweepEntry run_one(const RunConfig& base, const std::string& key,
                   const std::string& value, std::size_t index) {
    SweepEntry entry;
    entry.value = value;
    try {
        RunConfig cfg = base;
        apply_override(cfg, key, value);
        std::ostringstream dir;
        dir << base.out_dir << "/sweep_" << index;
        cfg.out_dir = dir.str();
        std::filesystem::create_directories(cfg.out_dir);

        PreparedRun run = prepare(cfg);
        const RunResult result = run_flow(run.initial, run.params);
        write_series_file(result, cfg.out_dir + "/series.csv");
        write_snapshot_file(result.snapshots.back(),
                            cfg.out_dir + "/final_snapshot.json");

        entry.ok = true;
        entry.kind = result.termination.kind;
        entry.t_final = result.termination.t_final;
        entry.final_kosc = result.trajectory.back().Kosc;
        std::vector<std::pair<double, double>> series;
        series.reserve(result.trajectory.size());
        for (const QuantityRecord& q : result.trajectory)
            series.emplace_back(q.t, q.Kosc / q.L);
        try {
            entry.rate = decay_fit(series);
            entry.rate_valid = true;
        } catch (const DiagnosticsError&) {
            entry.rate_valid = false;
        }
    } catch (const std::exception& e) {
        entry.ok = false;
        entry.error = e.what();
    }
    return entry;
}

}  // namespace

std::vector<SweepEntry> run_sweep(const RunConfig& base,
                                  const std::string& param_key,
                                  const std::vector<std::string>& values,
                                  int max_threads) {
    std::vector<SweepEntry> entries(values.size());
    const int workers =
        std::min<int>(thread_budget(max_threads),
                      static_cast<int>(std::max<std::size_t>(values.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            entries[i] = run_one(base, param_key, values[i], i);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return entries;
}

std::string sweep_summary_csv(const std::string& param_key,
                              std::span<const SweepEntry> entries) {
    std::ostringstream os;
    os << "param,value,termination,t_final,final_Kosc,rate\n";
    char buf[40];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    for (const SweepEntry& e : entries) {
        os << param_key << ',' << e.value << ',';
        if (!e.ok) {
            os << "Error,,,\n";
            continue;
        }
        os << to_string(e.kind) << ',' << num(e.t_final) << ','
           << num(e.final_kosc) << ',';
        if (e.rate_valid) os << num(e.rate);
        os << '\n';
    }
    return os.str();
}

}  // namespace conediff
