#pragma once

#include <string>
#include <vector>

#include "conediff/config.hpp"
#include "conediff/flow.hpp"

namespace conediff {

// Trajectory audit: conservation, monotonicity, boundary flux, decay bounds
// and (informationally) the identity residuals.
struct VerifyLine {
    enum class Status { Pass, Fail, Info };
    std::string name;
    Status status = Status::Pass;
    double worst = 0.0;
    double t_worst = 0.0;
};

struct VerifyReport {
    std::vector<VerifyLine> lines;
    bool pass = true;

    std::string text() const;  // one line per check
};

VerifyReport verify_trajectory(const RunResult& result,
                               const CheckTolerances& tol);

}  // namespace conediff
