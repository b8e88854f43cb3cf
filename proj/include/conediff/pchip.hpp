#pragma once

#include <span>
#include <vector>

namespace conediff {

// Monotonicity-preserving piecewise cubic Hermite interpolant
// (Fritsch-Carlson slopes).  Interpolates the data exactly; where the data
// are monotone the interpolant is monotone as well.
class Pchip {
public:
    Pchip(std::span<const double> x, std::span<const double> y);

    double operator()(double t) const;

private:
    std::vector<double> x_, y_, d_;  // abscissae, values, node slopes
};

}  // namespace conediff
