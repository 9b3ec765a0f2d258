#include "scsf/interpolant.hpp"

#include <algorithm>
#include <cmath>

namespace scsf {

CurveInterpolant::CurveInterpolant(const Curve& curve)
    : dim_(curve.dim()), n_(curve.size()), length_(curve.length()) {
    knots_.resize(n_ + 1);
    const auto s = curve.arclengths();
    std::copy(s.begin(), s.end(), knots_.begin());
    knots_[n_] = length_;

    value_.assign(curve.raw().begin(), curve.raw().end());

    // Central-difference tangents on the cyclic arclength knots.
    tang_.resize(dim_ * n_);
    const auto seg = curve.segment_lengths();
    for (std::size_t d = 0; d < dim_; ++d) {
        const double* v = value_.data() + d * n_;
        double* m = tang_.data() + d * n_;
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t ip = (i + 1 == n_) ? 0 : i + 1;
            const std::size_t im = (i == 0) ? n_ - 1 : i - 1;
            m[i] = (v[ip] - v[im]) / (seg[im] + seg[i]);
        }
    }
}

void CurveInterpolant::eval(double s, std::span<double> out) const {
    double w = std::fmod(s, length_);
    if (w < 0.0) w += length_;
    // segment index: largest k with knots_[k] <= w
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), w);
    std::size_t k = static_cast<std::size_t>(it - knots_.begin());
    k = (k == 0) ? 0 : k - 1;
    if (k >= n_) k = n_ - 1;
    const double h = knots_[k + 1] - knots_[k];
    const double t = (w - knots_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const std::size_t kp = (k + 1 == n_) ? 0 : k + 1;
    for (std::size_t d = 0; d < dim_; ++d) {
        const double* v = value_.data() + d * n_;
        const double* m = tang_.data() + d * n_;
        out[d] = h00 * v[k] + h10 * h * m[k] + h01 * v[kp] + h11 * h * m[kp];
    }
}

std::vector<double> CurveInterpolant::operator()(double s) const {
    std::vector<double> p(dim_);
    eval(s, p);
    return p;
}

}  // namespace scsf
