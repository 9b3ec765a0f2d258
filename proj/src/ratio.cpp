#include "scsf/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "scsf/kernels/kernels.hpp"
#include "scsf/vecops.hpp"

namespace scsf {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_gap(double s_p, double s_q, double L) {
    double g = std::fmod(s_q - s_p, L);
    if (g < 0.0) g += L;
    return g;  // in [0, L)
}

// Deterministic golden-section minimization of f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double compute_psi(double L, double l) {
    if (!(L > 0.0)) throw std::invalid_argument("compute_psi: L must be positive");
    if (l < 0.0 || l > L) throw std::invalid_argument("compute_psi: l outside [0, L]");
    return (L / kPi) * std::sin(kPi * l / L);
}

double huisken_ratio(const CurveInterpolant& interp, double s_p, double s_q) {
    const double L = interp.length();
    const double l_raw = wrap_gap(s_p, s_q, L);
    if (l_raw == 0.0)
        throw std::invalid_argument("huisken_ratio: coincident parameters");
    std::vector<double> p(interp.dim()), q(interp.dim());
    interp.eval(s_p, p);
    interp.eval(s_q, q);
    return dist(p, q) / compute_psi(L, l_raw);
}

double huisken_ratio(const Curve& curve, double s_p, double s_q) {
    return huisken_ratio(CurveInterpolant(curve), s_p, s_q);
}

RatioReport min_huisken_ratio(const Curve& curve) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    const double L = curve.length();
    const auto s = curve.arclengths();

    std::vector<const double*> coords(dim);
    for (std::size_t d = 0; d < dim; ++d) coords[d] = curve.coord(d).data();
    std::vector<double> sin_half(n), cos_half(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = kPi * s[i] / L;
        sin_half[i] = std::sin(a);
        cos_half[i] = std::cos(a);
    }
    kernels::RatioScanInput in{coords.data(), dim,      sin_half.data(),
                               cos_half.data(), n, L / kPi};
    const kernels::RatioScanResult grid = kernels::min_ratio_scan(in);

    // Local refinement on the continuous interpolant around the best cell.
    const CurveInterpolant interp(curve);
    auto ratio_at = [&](double sp, double sq) {
        const double gap = wrap_gap(sp, sq, L);
        const double l = std::clamp(gap, 1e-14 * L, L * (1.0 - 1e-14));
        std::vector<double> p(dim), q(dim);
        interp.eval(sp, p);
        interp.eval(sq, q);
        return dist(p, q) / compute_psi(L, l);
    };

    const auto s_of = [&](std::size_t i) { return s[i % n] + (i >= n ? L : 0.0); };
    double sp = s_of(grid.i), sq = s_of(grid.j);
    const double lo_p = s_of((grid.i + n - 1) % n) - ((grid.i == 0) ? L : 0.0);
    const double hi_p = s_of(grid.i + 1);
    const double lo_q = s_of((grid.j + n - 1) % n) - ((grid.j == 0) ? L : 0.0);
    const double hi_q = s_of(grid.j + 1);
    const double tol = 1e-10 * L;
    for (int sweep = 0; sweep < 3; ++sweep) {
        sp = golden_min([&](double x) { return ratio_at(x, sq); }, lo_p, hi_p, tol);
        sq = golden_min([&](double x) { return ratio_at(sp, x); }, lo_q, hi_q, tol);
    }
    double refined = ratio_at(sp, sq);
    const double grid_val = std::sqrt(grid.ratio2);
    if (grid_val < refined) {  // refinement should not lose to its own cell
        refined = grid_val;
        sp = s_of(grid.i);
        sq = s_of(grid.j);
    }

    RatioReport rep;
    if (refined <= 1.0) {
        rep.min_ratio = refined;
    } else {
        rep.min_ratio = 1.0;  // the diagonal p -> q limit is the smaller candidate
        rep.diagonal_is_min = true;
    }
    rep.s_p = std::fmod(sp + L, L);
    rep.s_q = std::fmod(sq + L, L);
    std::vector<double> p(dim), q(dim);
    interp.eval(sp, p);
    interp.eval(sq, q);
    rep.d = dist(p, q);
    rep.l = wrap_gap(sp, sq, L);
    rep.psi = compute_psi(L, std::clamp(rep.l, 1e-14 * L, L * (1.0 - 1e-14)));
    rep.alpha = kPi * rep.l / L;
    return rep;
}

double symmetric_ratio(const SymmetricPairing& pairing, double s) {
    const double L = pairing.length();
    const double half = 0.5 * L;
    if (s < 0.0 || s > half)
        throw std::invalid_argument("symmetric_ratio: s outside [0, L/2]");
    const double eps = 1e-9 * L;
    if (s < eps) return 1.0;  // lim_{s->0} I = y_s(0) = 1
    if (s > half - eps) {
        // removable 0/0 at the far crossing: one-sided quadratic extrapolation
        const double h = pairing.grid_step();
        const double i1 = symmetric_ratio(pairing, half - h);
        const double i2 = symmetric_ratio(pairing, half - 2.0 * h);
        const double i3 = symmetric_ratio(pairing, half - 3.0 * h);
        return 3.0 * i1 - 3.0 * i2 + i3;
    }
    return 2.0 * pairing.y(s) / compute_psi(L, 2.0 * s);
}

SymmetricRatioReport min_symmetric_ratio(const Curve& curve, const SymmetricPairing& pairing) {
    const double L = pairing.length();
    const double half = 0.5 * L;
    SymmetricRatioReport rep;

    // Grid: flow vertices mapped into pairing coordinates, restricted to the
    // half-curve, plus the far endpoint.
    const double anchor = pairing.anchor_arclength();
    const double orient = pairing.orientation();
    std::vector<double> grid;
    grid.reserve(curve.size() / 2 + 2);
    for (double sv : curve.arclengths()) {
        double rel = std::fmod(orient * (sv - anchor), L);
        if (rel < 0.0) rel += L;
        if (rel > 1e-9 * L && rel <= half) grid.push_back(rel);
    }
    std::sort(grid.begin(), grid.end());
    if (grid.empty() || grid.back() < half - 1e-9 * L) grid.push_back(half);

    rep.grid_s = grid;
    rep.grid_I.resize(grid.size());
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        rep.grid_I[k] = symmetric_ratio(pairing, grid[k]);
        if (rep.grid_I[k] < best) {
            best = rep.grid_I[k];
            best_k = k;
        }
    }

    // Dyadic refinement around the best grid point.
    double lo = (best_k == 0) ? 1e-9 * L : grid[best_k - 1];
    double hi = (best_k + 1 == grid.size()) ? half : grid[best_k + 1];
    double mid = grid[best_k];
    double fmid = best;
    const double tol = 1e-10 * L;
    while (hi - lo > tol) {
        const double xl = 0.5 * (lo + mid);
        const double xr = 0.5 * (mid + hi);
        const double fl = symmetric_ratio(pairing, xl);
        const double fr = symmetric_ratio(pairing, xr);
        if (fl < fmid && fl <= fr) {
            hi = mid;
            mid = xl;
            fmid = fl;
        } else if (fr < fmid) {
            lo = mid;
            mid = xr;
            fmid = fr;
        } else {
            lo = xl;
            hi = xr;
        }
    }
    rep.interior_min = fmid;
    rep.interior_argmin_s = mid;

    if (fmid < 1.0) {
        rep.min_I = fmid;
        rep.boundary_is_min = false;
        rep.swapped = mid > 0.25 * L;
        rep.argmin_s0 = rep.swapped ? (half - mid) : mid;
        rep.alpha0 = 2.0 * kPi * rep.argmin_s0 / L;
    } else {
        rep.min_I = 1.0;  // s -> 0 boundary candidate wins
        rep.boundary_is_min = true;
        rep.argmin_s0 = 0.0;
        rep.alpha0 = 0.0;
    }
    return rep;
}

VariationDiagnostics variation_diagnostics(const SymmetricPairing& pairing, double s0) {
    const double L = pairing.length();
    if (!(s0 > 0.0) || s0 >= 0.5 * L)
        throw std::invalid_argument("variation_diagnostics: s0 must be an interior point");
    const double h = pairing.grid_step();
    const double y0 = pairing.y(s0);
    const double yp = pairing.y(s0 + h);
    const double ym = pairing.y(s0 - h);
    const double y_s = (yp - ym) / (2.0 * h);
    const double y_ss = (yp - 2.0 * y0 + ym) / (h * h);
    const double alpha = 2.0 * kPi * s0 / L;
    const double psi = compute_psi(L, 2.0 * s0);
    VariationDiagnostics diag;
    diag.r1 = y_s - 2.0 * (y0 / psi) * std::cos(alpha);
    diag.r2 = y_ss * psi + (4.0 * kPi / L) * y0 * std::sin(alpha);
    return diag;
}

namespace {

// Curvature magnitude at arclength s of the curve, linear interpolation of
// the vertex values.
double k_at(const Curve& curve, std::span<const double> k_mag, double s) {
    const double L = curve.length();
    double w = std::fmod(s, L);
    if (w < 0.0) w += L;
    const auto arc = curve.arclengths();
    const auto it = std::upper_bound(arc.begin(), arc.end(), w);
    std::size_t k = static_cast<std::size_t>(it - arc.begin());
    k = (k == 0) ? 0 : k - 1;
    const std::size_t kp = (k + 1 == curve.size()) ? 0 : k + 1;
    const double h = curve.segment_lengths()[k];
    const double t = (w - arc[k]) / h;
    return (1.0 - t) * k_mag[k] + t * k_mag[kp];
}

// integral of k ds from pairing coordinate 0 to s0 (along the pairing
// orientation), composite trapezoid.
double integrate_k(const Curve& curve, std::span<const double> k_mag,
                   const SymmetricPairing& pairing, double s0) {
    const double mean_h = curve.length() / static_cast<double>(curve.size());
    const std::size_t m =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(s0 / mean_h)) * 2, 16,
                                4 * curve.size());
    const double anchor = pairing.anchor_arclength();
    const double orient = pairing.orientation();
    double acc = 0.0;
    double prev = k_at(curve, k_mag, anchor);
    const double dstep = s0 / static_cast<double>(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const double cur = k_at(curve, k_mag, anchor + orient * dstep * static_cast<double>(i));
        acc += 0.5 * (prev + cur) * dstep;
        prev = cur;
    }
    return acc;
}

}  // namespace

double geodesic_bound_slack(const Curve& curve, std::span<const double> k_mag,
                            const SymmetricPairing& pairing, double s0) {
    const double alpha = 2.0 * kPi * s0 / pairing.length();
    return integrate_k(curve, k_mag, pairing, s0) - alpha;
}

RateBound ratio_rate_bound(const Curve& curve, std::span<const double> k_mag,
                           const SymmetricPairing& pairing, double s0,
                           double I_t_observed, double tol) {
    const double L = pairing.length();
    const double alpha = 2.0 * kPi * s0 / L;
    const double psi = compute_psi(L, 2.0 * s0);
    const double y = pairing.y(s0);
    const double intk = integrate_k(curve, k_mag, pairing, s0);
    RateBound rb;
    rb.bound = 4.0 * y * std::cos(alpha) / (psi * psi * s0) * (intk * intk - alpha * alpha);
    rb.ok = I_t_observed >= rb.bound - tol * std::max(1.0, std::abs(rb.bound));
    return rb;
}

}  // namespace scsf
