#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scsf/curve.hpp"
#include "scsf/interpolant.hpp"

// Reflection hyperplane machinery: the reflection map, plane-crossing
// detection, the symmetric two-crossing predicate, and the intrinsic pairing
// s -> -s anchored at a tracked crossing.

namespace scsf {

struct Hyperplane {
    std::vector<double> normal;  // unit length
    double offset = 0.0;         // plane is { x : <x,normal> = offset }

    // Normalizes the given normal direction; offset is the signed distance
    // of the plane from the origin along the unit normal. Throws on zero
    // normal.
    static Hyperplane make(std::vector<double> normal, double offset);

    double signed_distance(std::span<const double> x) const;
};

struct Crossing {
    std::size_t segment = 0;  // crossing lies between vertex `segment` and the next
    double arclength = 0.0;
    std::vector<double> position;
    double slope = 0.0;  // d(signed distance)/ds across the segment
};

struct CrossingSet {
    std::vector<Crossing> crossings;
    std::size_t count() const { return crossings.size(); }
};

std::vector<double> reflect_point(std::span<const double> x, const Hyperplane& plane);
Curve reflect_curve(const Curve& curve, const Hyperplane& plane);

// Transversal sign changes of the signed distance along the cyclic curve.
// Vertices exactly on the plane count as positive side. Throws on tangential
// contact (a whole segment inside the plane).
CrossingSet count_plane_crossings(const Curve& curve, const Hyperplane& plane);

// Max over vertices of the distance to the reflected polygon, normalized by
// curve length.
double symmetry_defect(const Curve& curve, const Hyperplane& plane);

struct SymmetryVerdict {
    bool symmetric_two_crossing = false;
    double defect = 0.0;  // normalized by L
    std::size_t crossing_count = 0;
};

SymmetryVerdict is_symmetric_two_crossing(const Curve& curve, const Hyperplane& plane,
                                          double tol);

// Intrinsic pairing of a symmetric two-crossing curve: arclength 0 sits at
// the anchor crossing A, the paired point of s is at -s, and the signed
// plane coordinate y(s) is nonnegative for s in (0, L/2).
class SymmetricPairing {
public:
    SymmetricPairing(const Curve& curve, const Hyperplane& plane, double anchor_s,
                     double orientation);

    double length() const { return interp_.length(); }
    double anchor_arclength() const { return anchor_s_; }
    double orientation() const { return orientation_; }
    const Hyperplane& plane() const { return plane_; }

    // Position at pairing coordinate s (gamma(anchor + orientation*s)).
    std::vector<double> point(double s) const;
    // Position of the reflection partner (pairing coordinate -s).
    std::vector<double> mirror_point(double s) const;
    // The intrinsic pairing map itself.
    static double pair(double s) { return -s; }

    // Signed distance of point(s) to the plane; >= 0 on (0, L/2).
    double y(double s) const;

    // Same curve re-anchored at the other crossing B (swaps the two arcs).
    SymmetricPairing swapped() const;

    // Mean spacing of the underlying polygon; used as a finite-difference
    // scale by the diagnostics.
    double grid_step() const { return grid_step_; }

private:
    CurveInterpolant interp_;
    Hyperplane plane_;
    double anchor_s_;
    double orientation_;
    double grid_step_;
};

// Builds the pairing. The anchor is the crossing nearest prev_anchor_pos if
// given, otherwise the crossing where the signed distance increases along
// the curve orientation. Throws when the symmetry verdict fails.
SymmetricPairing build_symmetric_pairing(const Curve& curve, const Hyperplane& plane,
                                         double tol = 1e-4,
                                         std::span<const double> prev_anchor_pos = {});

// Averages the curve with its intrinsic reflections, one plane at a time.
// Requires defect < 1e-3 * L for each plane.
Curve symmetrize_curve(const Curve& curve, std::span<const Hyperplane> planes);

}  // namespace scsf
