#include "scsf/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace scsf {

namespace {

constexpr double kPi = std::numbers::pi;

struct Pt {
    double x, y;
};

double dist2_point_seg(Pt p, Pt a, Pt b) {
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double len2 = ex * ex + ey * ey;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p.x - a.x) * ex + (p.y - a.y) * ey) / len2, 0.0, 1.0);
    const double rx = p.x - a.x - t * ex, ry = p.y - a.y - t * ey;
    return rx * rx + ry * ry;
}

double cross(Pt o, Pt a, Pt b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool segments_intersect(Pt a, Pt b, Pt c, Pt d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double dist2_seg_seg(Pt a, Pt b, Pt c, Pt d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    double best = dist2_point_seg(a, c, d);
    best = std::min(best, dist2_point_seg(b, c, d));
    best = std::min(best, dist2_point_seg(c, a, b));
    best = std::min(best, dist2_point_seg(d, a, b));
    return best;
}

}  // namespace

double PlanarPolygon::perimeter() const {
    const std::size_t n = size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1 == n) ? 0 : i + 1;
        acc += std::hypot(x[j] - x[i], y[j] - y[i]);
    }
    return acc;
}

PlanarPolygon project_xy(const Curve& curve) {
    PlanarPolygon p;
    const auto cx = curve.coord(0);
    const auto cy = curve.coord(1);
    p.x.assign(cx.begin(), cx.end());
    p.y.assign(cy.begin(), cy.end());
    return p;
}

ProjectionReport is_one_to_one_convex_projection(const Curve& curve) {
    ProjectionReport rep;
    rep.polygon = project_xy(curve);
    const auto& px = rep.polygon.x;
    const auto& py = rep.polygon.y;
    const std::size_t n = rep.polygon.size();
    const double perim = rep.polygon.perimeter();
    if (!(perim > 0.0))
        throw std::runtime_error("is_one_to_one_convex_projection: degenerate projection");

    // Collinear point clouds have a vanishing minor principal axis.
    {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += px[i];
            my += py[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = px[i] - mx, dy = py[i] - my;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        const double tr = sxx + syy;
        const double disc = std::sqrt(std::max(0.0, (sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy));
        const double lam_min = 0.5 * (tr - disc);
        if (lam_min <= 1e-20 * tr)
            throw std::runtime_error("is_one_to_one_convex_projection: degenerate projection");
    }

    // Turning increments between consecutive non-degenerate edges.
    std::vector<std::size_t> live;  // vertices whose outgoing edge has positive length
    live.reserve(n);
    const double edge_tol = 1e-14 * perim;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1 == n) ? 0 : i + 1;
        if (std::hypot(px[j] - px[i], py[j] - py[i]) > edge_tol) live.push_back(i);
    }
    if (live.size() < 3)
        throw std::runtime_error("is_one_to_one_convex_projection: degenerate projection");

    double total = 0.0, total_abs = 0.0;
    double pos = 0.0, neg = 0.0;
    std::vector<double> turns(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) {
        const std::size_t i0 = live[k];
        const std::size_t i1 = (i0 + 1) % n;
        const std::size_t j0 = live[(k + 1) % live.size()];
        const std::size_t j1 = (j0 + 1) % n;
        const double e0x = px[i1] - px[i0], e0y = py[i1] - py[i0];
        const double e1x = px[j1] - px[j0], e1y = py[j1] - py[j0];
        const double cr = e0x * e1y - e0y * e1x;
        const double dt = e0x * e1x + e0y * e1y;
        const double th = std::atan2(cr, dt);
        turns[k] = th;
        total += th;
        total_abs += std::abs(th);
        if (th > 0) pos += th;
        if (th < 0) neg -= th;
        if (std::abs(th) > kPi - 1e-9) rep.cusp_flagged = true;
    }
    rep.total_turning = total;
    rep.total_abs_turning = total_abs;

    const double sign = (pos >= neg) ? 1.0 : -1.0;
    double min_turn = std::numeric_limits<double>::infinity();
    for (double th : turns) min_turn = std::min(min_turn, sign * th);
    rep.min_turn = min_turn;
    const bool same_sign = min_turn >= -1e-12;
    const bool winds_once = std::abs(std::abs(total) - 2.0 * kPi) < 1e-6;
    rep.convex = same_sign && winds_once;

    // Injectivity: closest approach between non-adjacent projected segments.
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const Pt a{px[i], py[i]};
        const Pt b{px[i + 1], py[i + 1]};
        const double len_ab = std::hypot(b.x - a.x, b.y - a.y);
        const std::size_t j_end = (i == 0) ? n - 1 : n;  // skip the wrap-adjacent pair (0, n-1)
        for (std::size_t j = i + 2; j < j_end; ++j) {
            const std::size_t jp = (j + 1 == n) ? 0 : j + 1;
            const Pt c{px[j], py[j]};
            const Pt d{px[jp], py[jp]};
            // quick reject on midpoint distance
            const double mx = 0.5 * (c.x + d.x) - 0.5 * (a.x + b.x);
            const double my = 0.5 * (c.y + d.y) - 0.5 * (a.y + b.y);
            const double len_cd = std::hypot(d.x - c.x, d.y - c.y);
            const double reach = 0.5 * (len_ab + len_cd);
            const double md = std::sqrt(mx * mx + my * my);
            if (md - reach > 0.0 && (md - reach) * (md - reach) >= best2) continue;
            best2 = std::min(best2, dist2_seg_seg(a, b, c, d));
        }
    }
    rep.closest_approach = std::sqrt(best2);
    rep.injective = rep.closest_approach > 1e-9 * perim;
    return rep;
}

TurningReport projection_total_curvature(const Curve& curve) {
    const PlanarPolygon poly = project_xy(curve);
    const std::size_t n = poly.size();
    const double perim = poly.perimeter();
    const double edge_tol = 1e-12 * perim;
    TurningReport rep;
    double prev_ex = 0.0, prev_ey = 0.0;
    // last non-degenerate edge direction as the seed
    std::size_t last = n;
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t j = (i + 1 == n) ? 0 : i + 1;
        const double ex = poly.x[j] - poly.x[i], ey = poly.y[j] - poly.y[i];
        if (std::hypot(ex, ey) > edge_tol) {
            prev_ex = ex;
            prev_ey = ey;
            last = i;
            break;
        }
    }
    if (last == n)
        throw std::runtime_error("projection_total_curvature: projection not immersed");
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1 == n) ? 0 : i + 1;
        const double ex = poly.x[j] - poly.x[i], ey = poly.y[j] - poly.y[i];
        if (std::hypot(ex, ey) <= edge_tol)
            throw std::runtime_error("projection_total_curvature: projection not immersed");
        const double cr = prev_ex * ey - prev_ey * ex;
        const double dt = prev_ex * ex + prev_ey * ey;
        const double th = std::atan2(cr, dt);
        if (std::abs(th) > kPi - 1e-9) rep.cusp_flagged = true;  // capped at pi by atan2
        rep.signed_total += th;
        rep.absolute_total += std::abs(th);
        prev_ex = ex;
        prev_ey = ey;
    }
    return rep;
}

}  // namespace scsf
