#pragma once

#include <cstddef>
#include <vector>

#include "scsf/curve.hpp"

// Orthogonal projection onto the xy-plane and the two predicates attached to
// it: injectivity of the projection restricted to the curve and convexity of
// the projected polygon.

namespace scsf {

struct PlanarPolygon {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t size() const { return x.size(); }
    double perimeter() const;
};

// Drops coordinates 3..n.
PlanarPolygon project_xy(const Curve& curve);

struct ProjectionReport {
    PlanarPolygon polygon;
    bool injective = false;
    double closest_approach = 0.0;  // min distance between non-adjacent segments
    bool convex = false;
    double min_turn = 0.0;          // most concave turning increment (w.r.t. dominant sign)
    double total_turning = 0.0;     // signed exterior-angle sum
    double total_abs_turning = 0.0;
    bool cusp_flagged = false;
};

// Injectivity via the all-pairs non-adjacent segment distance (threshold
// 1e-9 * perimeter); convexity via a single sign of consecutive edge cross
// products (|turn| <= 1e-12 tolerated) plus winding +-2pi. Throws when the
// projection is degenerate (all points collinear).
ProjectionReport is_one_to_one_convex_projection(const Curve& curve);

struct TurningReport {
    double signed_total = 0.0;
    double absolute_total = 0.0;
    bool cusp_flagged = false;  // anti-parallel consecutive edges, angle capped at pi
};

// Signed and absolute exterior-angle sums of the projected polygon. Throws
// when a projected edge degenerates to a point.
TurningReport projection_total_curvature(const Curve& curve);

}  // namespace scsf
