#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsf/curve.hpp"

// Periodic cubic Hermite interpolant of a closed curve, parametrized by the
// arclength of the underlying polygon. Tangents are central differences on
// the arclength knots (Catmull-Rom generalized to nonuniform spacing), so the
// interpolant is C1 and reproduces the polygon vertices exactly.

namespace scsf {

class CurveInterpolant {
public:
    explicit CurveInterpolant(const Curve& curve);

    std::size_t dim() const { return dim_; }
    double length() const { return length_; }

    // Position at arclength s (any real; wrapped periodically). out must have
    // dim() entries.
    void eval(double s, std::span<double> out) const;
    std::vector<double> operator()(double s) const;

private:
    std::size_t dim_;
    std::size_t n_;
    double length_;
    std::vector<double> knots_;   // n_+1 entries, knots_[n_] = length
    std::vector<double> value_;   // dim-major, n_ per coordinate
    std::vector<double> tang_;    // dim-major, n_ per coordinate
};

}  // namespace scsf
