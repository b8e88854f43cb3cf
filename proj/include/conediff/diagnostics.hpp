#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conediff/geometry.hpp"

namespace conediff {

struct DiagnosticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalars recorded at one time along a trajectory, plus the auxiliary
// quadratures the identity audits need.  All entries are finite.
struct QuantityRecord {
    double t = 0.0;
    double L = 0.0;
    double A = 0.0;
    double kbar = 0.0;
    double omega = 0.0;
    double Kosc = 0.0;
    double k_l2sq = 0.0;    // ∫ k^2 ds
    double ks_l2sq = 0.0;   // ∫ k_s^2 ds
    double kss_l2sq = 0.0;  // ∫ k_ss^2 ds
    double ks3_l2sq = 0.0;  // ∫ k_sss^2 ds   (populated for m = 2)
    double ks4_l2sq = 0.0;  // ∫ k_ssss^2 ds  (populated for m = 2)
    double rho_minus = 0.0;
    double rho_plus = 0.0;
    double dt = 0.0;
    int m = 1;

    // Auxiliary quadratures.
    double i_k2ks2 = 0.0;    // ∫ k^2 k_s^2 ds
    double i_dev2ks2 = 0.0;  // ∫ (k-kbar)^2 k_s^2 ds
    double i_devks2 = 0.0;   // ∫ (k-kbar) k_s^2 ds
    double i_kks2kss = 0.0;  // ∫ k k_s^2 k_ss ds
    double i_k2kss2 = 0.0;   // ∫ k^2 k_ss^2 ds

    // One-sided boundary residuals (no ghost assumptions).
    double bc_ks_minus = 0.0;
    double bc_ks_plus = 0.0;
    double bc_ks3_minus = 0.0;
    double bc_ks3_plus = 0.0;

    double max_dev_inf = 0.0;  // max |k - kbar|
};

// Measure all record quantities on a curve (expects cone-built tables).
QuantityRecord measure(const DiscreteCurve& c, double t, double dt, int m);

// Residuals of the integral evolution identities between two consecutive
// records: centered time differences against the trapezoidal average of the
// right-hand-side quadratures of the two states.
struct ResidualRecord {
    double r_L = 0.0;
    double r_A = 0.0;
    double r_kbar = 0.0;
    double r_k2 = 0.0;
    double r_Kosc = 0.0;
};

ResidualRecord check_identities(const QuantityRecord& prev,
                                const QuantityRecord& next);

// Largest initial oscillation of curvature for which decay is certified:
//   (pi/12)^2 * [ -24 w + sqrt((24 w)^2 + (48/pi)(1 - 4 w^2)) ]^2,
// evaluated in a cancellation-free form.  Domain: 0 < w < 1/2.
double smallness_threshold(double omega);

// Monotonicity margin 2 - (6/pi) K - 24 w sqrt(K) [- 8 w^2].  The rotation
// term is included by default; reports also quote the value without it.
double kosc_margin(double kosc, double omega, bool include_rotation_term = true);

// Poincare-Sobolev-Wirtinger ratio checks on a uniformly sampled function.
enum class PswVariant { MeanZero, EndpointsZero, SupMeanZero, SupEndpointsZero };

// Returns LHS/RHS of the variant's inequality; an audit passes when the
// ratio stays <= 1 + O(h^2).  Throws DiagnosticsError if the samples do not
// satisfy the variant's hypothesis.
double check_psw(std::span<const double> g, double len, PswVariant variant);

// Trajectory-wide bound checks:
//  (a) ∫k^2 ds <= (Kosc(0) + 4 pi^2 w^2) / L(t)
//  (b) Kosc(t)/L(t) <= (Kosc(0)/L0) exp(-delta pi^4 t / L0^4)
//  (c) L^3(t) <= L0^3 [1 + (3 Kosc(0)/(delta pi^2)) (exp(-delta pi^4 t/L0^4) - 1)]
// each with a relative tolerance.  delta is the margin at t = 0 with the
// rotation term included.
struct BoundCheck {
    bool pass = true;
    double worst_margin = 0.0;  // largest normalized violation (<= 0 if none)
    double worst_t = 0.0;
};

struct BoundsReport {
    BoundCheck k2_bound;      // (a)
    BoundCheck kosc_decay;    // (b)
    BoundCheck length_cubed;  // (c)
    bool informational = false;  // initial Kosc above threshold: not asserted
    double delta = 0.0;
    double margin_with_rotation = 0.0;
    double margin_without_rotation = 0.0;
};

BoundsReport check_bounds(std::span<const QuantityRecord> trajectory,
                          const QuantityRecord& initial, double tol_rel);

// Least-squares decay rate of a positive series: slope of -log(y) vs t.
// Nonpositive entries are excluded; fewer than 10 valid points is an error.
double decay_fit(std::span<const std::pair<double, double>> series);

// Curvature derivative tables with even (zero-odd-derivative) boundary
// extension, matching the flow's ghost design.
std::vector<double> curvature_derivative(std::span<const double> k,
                                         std::span<const double> s, int order);

}  // namespace conediff
