#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Closed discrete curves in R^n. A Curve is an immutable snapshot: N ordered
// vertices interpreted cyclically, with cached segment lengths and cumulative
// arclength. Coordinates are stored dimension-major (all x, then all y, ...)
// so per-coordinate loops run over contiguous memory.

namespace scsf {

class Curve {
public:
    // soa holds dim contiguous blocks of n values each.
    Curve(std::size_t dim, std::size_t n, std::vector<double> soa);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }

    std::span<const double> coord(std::size_t d) const {
        return {soa_.data() + d * n_, n_};
    }
    double component(std::size_t i, std::size_t d) const { return soa_[d * n_ + i]; }
    std::vector<double> point(std::size_t i) const;

    // Cumulative arclength s_i with s_0 = 0, strictly increasing.
    std::span<const double> arclengths() const { return arclen_; }
    // Length of segment i -> i+1 (cyclic).
    std::span<const double> segment_lengths() const { return seg_; }
    double length() const { return length_; }

    std::span<const double> raw() const { return soa_; }

private:
    std::size_t dim_;
    std::size_t n_;
    std::vector<double> soa_;
    std::vector<double> seg_;
    std::vector<double> arclen_;
    double length_ = 0.0;
};

// One trigonometric term of a coordinate function: c*cos(f*u) + s*sin(f*u).
struct FourierTerm {
    int freq = 0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

struct FourierSpec {
    std::vector<std::vector<FourierTerm>> coords;  // one term list per ambient coordinate
    std::size_t samples = 0;
};

// Coordinate value of the spec at parameter u.
double fourier_eval(const std::vector<FourierTerm>& terms, double u);

void validate(const FourierSpec& spec);

// Samples the trigonometric series at u_j = 2*pi*j/N.
Curve synthesize_fourier_curve(const FourierSpec& spec);

// Unit tangent at vertex i (neighbor chord, normalized).
std::vector<double> tangent_at(const Curve& curve, std::size_t i);

// Discrete second arclength derivative at vertex i:
//   2 * ((p[i+1]-p[i])/h+ - (p[i]-p[i-1])/h-) / (h+ + h-)
std::vector<double> curvature_vector(const Curve& curve, std::size_t i);

// All curvature vectors at once. out_soa is dim-major like Curve storage,
// out_mag holds |gamma_ss| per vertex. Buffers are resized as needed.
void curvature_profile(const Curve& curve, std::vector<double>& out_soa,
                       std::vector<double>& out_mag);

// Sum of exterior angles between consecutive segments.
double total_curvature(const Curve& curve);

// Vertex-weighted integral of k^2 ds (weights (h[i-1]+h[i])/2).
double curvature_square_integral(const Curve& curve, std::span<const double> k_mag);

// New curve with n_out vertices at equal arclength spacing, positions from
// periodic cubic interpolation. If anchor is given, vertex 0 sits at that
// arclength of the input curve.
Curve resample_uniform(const Curve& curve, std::size_t n_out,
                       std::optional<double> anchor = std::nullopt);

}  // namespace scsf
