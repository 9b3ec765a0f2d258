#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsf/curve.hpp"
#include "scsf/interpolant.hpp"
#include "scsf/symmetry.hpp"

// The chord-arc distance ratio d/psi over all pairs, its restriction I to
// reflection-paired points, their minima, and the variational diagnostics
// that hold at interior minima of I.

namespace scsf {

// psi(L, l) = (L/pi) sin(pi l / L); symmetric under l <-> L - l.
double compute_psi(double L, double l);

// d/psi between the points at arclengths s_p and s_q (periodic cubic
// interpolation of the polygon). Throws when the parameters coincide mod L.
double huisken_ratio(const Curve& curve, double s_p, double s_q);
double huisken_ratio(const CurveInterpolant& interp, double s_p, double s_q);

struct RatioReport {
    double min_ratio = 0.0;
    double s_p = 0.0, s_q = 0.0;  // argmin arclengths (refined)
    double d = 0.0;               // extrinsic distance at the argmin
    double l = 0.0;               // intrinsic distance at the argmin
    double psi = 0.0;
    double alpha = 0.0;           // pi l / L
    bool diagonal_is_min = false; // the p -> q limit value 1 was the minimum
};

// Global minimum of d/psi: exhaustive vertex-pair scan (SIMD kernels) plus
// golden-section refinement around the best cell; the diagonal limit value 1
// competes as a candidate.
RatioReport min_huisken_ratio(const Curve& curve);

// I(s) = 2 y(s) / psi(L, 2s) for s in (0, L/2); limit conventions at the
// ends: 1 at s -> 0, one-sided quadratic extrapolation at s = L/2.
double symmetric_ratio(const SymmetricPairing& pairing, double s);

struct SymmetricRatioReport {
    std::vector<double> grid_s;  // profile grid (pairing coordinates)
    std::vector<double> grid_I;
    double min_I = 0.0;        // includes the boundary candidate 1
    bool boundary_is_min = false;
    double interior_min = 0.0; // best interior value (inf when profile empty)
    double interior_argmin_s = 0.0;  // raw pairing coordinate in (0, L/2)
    double argmin_s0 = 0.0;    // normalized into (0, L/4]; 0 when boundary wins
    bool swapped = false;      // argmin normalization required the A/B swap
    double alpha0 = 0.0;       // 2 pi s0 / L at the normalized argmin
};

// Minimum of I over the half-curve grid (flow vertices restricted to
// (0, L/2]) with dyadic refinement near the argmin.
SymmetricRatioReport min_symmetric_ratio(const Curve& curve, const SymmetricPairing& pairing);

struct VariationDiagnostics {
    double r1 = 0.0;  // y_s - 2 (y/psi) cos(alpha); vanishes at interior minima
    double r2 = 0.0;  // y_ss psi + (4 pi / L) y sin(alpha); >= 0 at interior minima
};

// Finite-difference residuals of the first/second variation identities at an
// interior argmin s0 (pairing coordinates, s0 in (0, L/4] after swap).
VariationDiagnostics variation_diagnostics(const SymmetricPairing& pairing, double s0);

// integral_0^{s0} k ds - alpha0; >= 0 at interior argmins of I.
double geodesic_bound_slack(const Curve& curve, std::span<const double> k_mag,
                            const SymmetricPairing& pairing, double s0);

struct RateBound {
    double bound = 0.0;  // (4 y cos a)/(psi^2 s0) * ((int k ds)^2 - a^2)
    bool ok = false;     // I_t_observed >= bound - tol
};

RateBound ratio_rate_bound(const Curve& curve, std::span<const double> k_mag,
                           const SymmetricPairing& pairing, double s0,
                           double I_t_observed, double tol = 1e-3);

}  // namespace scsf
