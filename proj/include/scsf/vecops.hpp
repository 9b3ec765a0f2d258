#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

// Small helpers for points in R^n held as contiguous doubles.

namespace scsf {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline double dist2(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(dist2(a, b));
}

// Angle between two unit vectors, stable near 0 and near pi.
inline double unit_angle(std::span<const double> u, std::span<const double> v) {
    double dm = 0.0, dp = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double m = u[i] - v[i];
        const double p = u[i] + v[i];
        dm += m * m;
        dp += p * p;
    }
    return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

}  // namespace scsf
