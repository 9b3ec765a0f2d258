#include "scsf/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scsf/kernels/kernels.hpp"
#include "scsf/vecops.hpp"

namespace scsf {

namespace {
constexpr double kOnPlaneTol = 1e-12;  // relative to L
}

Hyperplane Hyperplane::make(std::vector<double> normal, double offset) {
    double len = 0.0;
    for (double v : normal) len += v * v;
    len = std::sqrt(len);
    if (!(len > 0.0)) throw std::invalid_argument("Hyperplane: zero normal");
    for (auto& v : normal) v /= len;
    return Hyperplane{std::move(normal), offset};
}

double Hyperplane::signed_distance(std::span<const double> x) const {
    return dot(x, normal) - offset;
}

std::vector<double> reflect_point(std::span<const double> x, const Hyperplane& plane) {
    const double sd = plane.signed_distance(x);
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t d = 0; d < out.size(); ++d) out[d] -= 2.0 * sd * plane.normal[d];
    return out;
}

Curve reflect_curve(const Curve& curve, const Hyperplane& plane) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    std::vector<double> soa(curve.raw().begin(), curve.raw().end());
    for (std::size_t i = 0; i < n; ++i) {
        double sd = -plane.offset;
        for (std::size_t d = 0; d < dim; ++d) sd += soa[d * n + i] * plane.normal[d];
        for (std::size_t d = 0; d < dim; ++d) soa[d * n + i] -= 2.0 * sd * plane.normal[d];
    }
    return Curve(dim, n, std::move(soa));
}

CrossingSet count_plane_crossings(const Curve& curve, const Hyperplane& plane) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    const double L = curve.length();
    std::vector<double> sd(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = -plane.offset;
        for (std::size_t d = 0; d < dim; ++d) v += curve.component(i, d) * plane.normal[d];
        sd[i] = v;
    }
    const double on_tol = kOnPlaneTol * L;
    CrossingSet out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
        if (std::abs(sd[i]) <= on_tol && std::abs(sd[ip]) <= on_tol)
            throw std::runtime_error(
                "count_plane_crossings: tangential contact (segment inside plane)");
        const bool pos_i = sd[i] >= 0.0;   // exactly-on-plane counts as positive
        const bool pos_ip = sd[ip] >= 0.0;
        if (pos_i == pos_ip) continue;
        const double t = sd[i] / (sd[i] - sd[ip]);
        Crossing c;
        c.segment = i;
        c.arclength = curve.arclengths()[i] + t * curve.segment_lengths()[i];
        c.position.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const double a = curve.component(i, d);
            const double b = curve.component(ip, d);
            c.position[d] = a + t * (b - a);
        }
        c.slope = (sd[ip] - sd[i]) / curve.segment_lengths()[i];
        out.crossings.push_back(std::move(c));
    }
    return out;
}

double symmetry_defect(const Curve& curve, const Hyperplane& plane) {
    const Curve reflected = reflect_curve(curve, plane);
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();

    std::vector<const double*> coords(dim);
    for (std::size_t d = 0; d < dim; ++d) coords[d] = reflected.coord(d).data();
    std::vector<double> inv_seg2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = reflected.segment_lengths()[i];
        inv_seg2[i] = 1.0 / (h * h);
    }
    kernels::PolylineDistInput in{coords.data(), dim, inv_seg2.data(), n};

    double worst2 = 0.0;
    std::vector<double> q(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) q[d] = curve.component(i, d);
        worst2 = std::max(worst2, kernels::point_polyline_dist2(in, q.data()));
    }
    return std::sqrt(worst2) / curve.length();
}

SymmetryVerdict is_symmetric_two_crossing(const Curve& curve, const Hyperplane& plane,
                                          double tol) {
    SymmetryVerdict v;
    v.defect = symmetry_defect(curve, plane);
    const CrossingSet cs = count_plane_crossings(curve, plane);
    v.crossing_count = cs.count();
    v.symmetric_two_crossing = (v.defect < tol) && (v.crossing_count == 2);
    return v;
}

SymmetricPairing::SymmetricPairing(const Curve& curve, const Hyperplane& plane,
                                   double anchor_s, double orientation)
    : interp_(curve),
      plane_(plane),
      anchor_s_(anchor_s),
      orientation_(orientation),
      grid_step_(curve.length() / static_cast<double>(curve.size())) {}

std::vector<double> SymmetricPairing::point(double s) const {
    return interp_(anchor_s_ + orientation_ * s);
}

std::vector<double> SymmetricPairing::mirror_point(double s) const {
    return interp_(anchor_s_ - orientation_ * s);
}

double SymmetricPairing::y(double s) const {
    std::vector<double> p(interp_.dim());
    interp_.eval(anchor_s_ + orientation_ * s, p);
    return plane_.signed_distance(p);
}

SymmetricPairing SymmetricPairing::swapped() const {
    SymmetricPairing other = *this;
    other.anchor_s_ = anchor_s_ + orientation_ * 0.5 * interp_.length();
    other.orientation_ = -orientation_;
    return other;
}

SymmetricPairing build_symmetric_pairing(const Curve& curve, const Hyperplane& plane,
                                         double tol,
                                         std::span<const double> prev_anchor_pos) {
    const SymmetryVerdict verdict = is_symmetric_two_crossing(curve, plane, tol);
    if (!verdict.symmetric_two_crossing)
        throw std::runtime_error("build_symmetric_pairing: curve is not symmetric two-crossing");

    const CrossingSet cs = count_plane_crossings(curve, plane);
    const Crossing* anchor = nullptr;
    if (!prev_anchor_pos.empty()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cs.crossings) {
            const double d2 = dist2(c.position, prev_anchor_pos);
            if (d2 < best) {
                best = d2;
                anchor = &c;
            }
        }
    } else {
        for (const auto& c : cs.crossings)
            if (c.slope > 0.0) {
                anchor = &c;
                break;
            }
        if (anchor == nullptr) anchor = &cs.crossings.front();
    }
    // orientation so that y grows moving away from the anchor at +s
    const double orient = (anchor->slope > 0.0) ? 1.0 : -1.0;
    return SymmetricPairing(curve, plane, anchor->arclength, orient);
}

Curve symmetrize_curve(const Curve& curve, std::span<const Hyperplane> planes) {
    Curve out = curve;
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    for (const auto& plane : planes) {
        const double defect = symmetry_defect(out, plane);
        if (defect >= 1e-3)
            throw std::runtime_error("symmetrize_curve: defect too large, refusing to distort");
        const CrossingSet cs = count_plane_crossings(out, plane);
        const Crossing* anchor = nullptr;
        for (const auto& c : cs.crossings)
            if (c.slope > 0.0) {
                anchor = &c;
                break;
            }
        if (anchor == nullptr)
            throw std::runtime_error("symmetrize_curve: no transversal crossing to anchor at");

        const Curve uniform = resample_uniform(out, n, anchor->arclength);
        std::vector<double> soa(dim * n);
        std::vector<double> p(dim), r(dim);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t m = (n - i) % n;
            double sd = -plane.offset;
            for (std::size_t d = 0; d < dim; ++d) sd += uniform.component(m, d) * plane.normal[d];
            for (std::size_t d = 0; d < dim; ++d) {
                const double mirrored = uniform.component(m, d) - 2.0 * sd * plane.normal[d];
                soa[d * n + i] = 0.5 * (uniform.component(i, d) + mirrored);
            }
        }
        out = Curve(dim, n, std::move(soa));
    }
    return out;
}

}  // namespace scsf
