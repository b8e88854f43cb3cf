#pragma once

#include <string>
#include <vector>

#include "conediff/config.hpp"
#include "conediff/flow.hpp"

namespace conediff {

// One parameter sweep entry in input order.
struct SweepEntry {
    std::string value;
    bool ok = false;             // run completed (any termination kind)
    std::string error;           // set when the run could not be prepared
    TerminationStatus::Kind kind = TerminationStatus::Kind::TimeLimit;
    double t_final = 0.0;
    double final_kosc = 0.0;
    double rate = 0.0;           // fitted decay rate of Kosc/L
    bool rate_valid = false;
};

// Runs one independent flow per value of `param_key`, in parallel over a
// worker pool of at most `max_threads` threads (0 = hardware concurrency,
// capped by the CONEDIFF_THREADS environment variable).  Each run persists
// its outputs under <base.out_dir>/sweep_<index>/.  Entries come back in
// input order regardless of scheduling.
std::vector<SweepEntry> run_sweep(const RunConfig& base,
                                  const std::string& param_key,
                                  const std::vector<std::string>& values,
                                  int max_threads = 0);

// Summary table: header "param,value,termination,t_final,final_Kosc,rate".
std::string sweep_summary_csv(const std::string& param_key,
                              std::span<const SweepEntry> entries);

}  // namespace conediff
