#pragma once

#include <utility>
#include <vector>

#include "conediff/geometry.hpp"

namespace conediff {

// Radial-graph perturbation of a tip-centered arc:
//   rho(theta) = r * (1 + sum_j eps_j * cos(j*pi*(theta1-theta)/phi)).
// The cosine basis has vanishing first and third theta-derivatives at both
// rays, so perpendicular contact and zero curvature flux hold in the
// continuum for every admissible spec.
struct PerturbationSpec {
    double base_radius = 1.0;
    std::vector<std::pair<int, double>> modes;  // (j >= 1, eps_j)

    void validate() const;  // j >= 1 integers, sum |eps_j| < 1, radius > 0
};

DiscreteCurve perturbed_arc(const Cone& cone, const PerturbationSpec& spec,
                            int n_segments);

// Boundary-condition residuals measured without ghost assumptions: the
// endpoint normal is taken from a one-sided quadratic fit, curvature-flux
// derivatives from one-sided polynomial fits of the curvature table.
struct CompatibilityReport {
    double nu_dot_e_minus = 0.0;  // |<nu(start), e_minus>|
    double nu_dot_e_plus = 0.0;   // |<nu(end), e_plus>|
    double ks_minus = 0.0;        // one-sided |k_s| at the start
    double ks_plus = 0.0;
    double ks3_minus = 0.0;       // one-sided |k_sss| at the start
    double ks3_plus = 0.0;
    double onray_minus = 0.0;     // endpoint distance to its ray line
    double onray_plus = 0.0;
    double rho_minus = 0.0;       // endpoint ray parameters (tip distances)
    double rho_plus = 0.0;

    double min_tip_distance() const { return std::min(rho_minus, rho_plus); }
};

CompatibilityReport compatibility_check(const DiscreteCurve& curve,
                                        const Cone& cone);

}  // namespace conediff
