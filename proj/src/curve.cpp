#include "scsf/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scsf/interpolant.hpp"
#include "scsf/vecops.hpp"

namespace scsf {

namespace {
constexpr double kImmersionTol = 1e-12;  // consecutive points closer than this * L coincide
}

Curve::Curve(std::size_t dim, std::size_t n, std::vector<double> soa)
    : dim_(dim), n_(n), soa_(std::move(soa)) {
    if (dim_ < 2) throw std::invalid_argument("Curve: ambient dimension must be >= 2");
    if (n_ < 8) throw std::invalid_argument("Curve: need at least 8 vertices");
    if (soa_.size() != dim_ * n_)
        throw std::invalid_argument("Curve: coordinate buffer size mismatch");

    seg_.resize(n_);
    arclen_.resize(n_);
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = (i + 1 == n_) ? 0 : i + 1;
        double d2 = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            const double diff = soa_[d * n_ + j] - soa_[d * n_ + i];
            d2 += diff * diff;
        }
        seg_[i] = std::sqrt(d2);
        total += seg_[i];
    }
    if (!(total > 0.0)) throw std::runtime_error("Curve: degenerate (zero length)");
    length_ = total;

    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        arclen_[i] = s;
        if (seg_[i] <= kImmersionTol * length_)
            throw std::runtime_error("Curve: immersion failure (coincident consecutive vertices)");
        s += seg_[i];
    }
}

std::vector<double> Curve::point(std::size_t i) const {
    std::vector<double> p(dim_);
    for (std::size_t d = 0; d < dim_; ++d) p[d] = soa_[d * n_ + i];
    return p;
}

double fourier_eval(const std::vector<FourierTerm>& terms, double u) {
    double v = 0.0;
    for (const auto& t : terms)
        v += t.cos_coeff * std::cos(t.freq * u) + t.sin_coeff * std::sin(t.freq * u);
    return v;
}

void validate(const FourierSpec& spec) {
    if (spec.coords.size() < 2)
        throw std::invalid_argument("FourierSpec: need at least 2 coordinates");
    if (spec.samples < 8)
        throw std::invalid_argument("FourierSpec: need at least 8 samples");
    bool any_nonzero = false;
    bool base_loop = false;
    for (const auto& terms : spec.coords) {
        for (const auto& t : terms) {
            if (t.cos_coeff != 0.0 || t.sin_coeff != 0.0) {
                any_nonzero = true;
                if (t.freq == 1) base_loop = true;
            }
        }
    }
    if (!any_nonzero) throw std::invalid_argument("FourierSpec: all coefficients zero");
    if (!base_loop)
        throw std::invalid_argument("FourierSpec: no coordinate has a frequency-1 term");
}

Curve synthesize_fourier_curve(const FourierSpec& spec) {
    validate(spec);
    const std::size_t n = spec.samples;
    const std::size_t dim = spec.coords.size();
    std::vector<double> soa(dim * n);
    const double du = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t d = 0; d < dim; ++d)
        for (std::size_t j = 0; j < n; ++j)
            soa[d * n + j] = fourier_eval(spec.coords[d], du * static_cast<double>(j));
    return Curve(dim, n, std::move(soa));
}

std::vector<double> tangent_at(const Curve& curve, std::size_t i) {
    const std::size_t n = curve.size();
    const std::size_t ip = (i + 1) % n;
    const std::size_t im = (i + n - 1) % n;
    std::vector<double> t(curve.dim());
    for (std::size_t d = 0; d < curve.dim(); ++d)
        t[d] = curve.component(ip, d) - curve.component(im, d);
    const double len = norm(t);
    if (!(len > 0.0)) throw std::runtime_error("tangent_at: degenerate chord");
    for (auto& v : t) v /= len;
    return t;
}

std::vector<double> curvature_vector(const Curve& curve, std::size_t i) {
    const std::size_t n = curve.size();
    const std::size_t ip = (i + 1) % n;
    const std::size_t im = (i + n - 1) % n;
    const double hp = curve.segment_lengths()[i];
    const double hm = curve.segment_lengths()[im];
    std::vector<double> k(curve.dim());
    for (std::size_t d = 0; d < curve.dim(); ++d) {
        const double fwd = (curve.component(ip, d) - curve.component(i, d)) / hp;
        const double bwd = (curve.component(i, d) - curve.component(im, d)) / hm;
        k[d] = 2.0 * (fwd - bwd) / (hp + hm);
    }
    return k;
}

void curvature_profile(const Curve& curve, std::vector<double>& out_soa,
                       std::vector<double>& out_mag) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    out_soa.assign(dim * n, 0.0);
    out_mag.assign(n, 0.0);
    const auto seg = curve.segment_lengths();
    for (std::size_t d = 0; d < dim; ++d) {
        const auto c = curve.coord(d);
        double* out = out_soa.data() + d * n;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
            const std::size_t im = (i == 0) ? n - 1 : i - 1;
            const double hp = seg[i];
            const double hm = seg[im];
            out[i] = 2.0 * ((c[ip] - c[i]) / hp - (c[i] - c[im]) / hm) / (hp + hm);
        }
    }
    for (std::size_t d = 0; d < dim; ++d) {
        const double* out = out_soa.data() + d * n;
        for (std::size_t i = 0; i < n; ++i) out_mag[i] += out[i] * out[i];
    }
    for (std::size_t i = 0; i < n; ++i) out_mag[i] = std::sqrt(out_mag[i]);
}

double total_curvature(const Curve& curve) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    const auto seg = curve.segment_lengths();
    std::vector<double> e0(dim), e1(dim);
    // edge direction n-1 -> 0
    for (std::size_t d = 0; d < dim; ++d)
        e0[d] = (curve.component(0, d) - curve.component(n - 1, d)) / seg[n - 1];
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
        for (std::size_t d = 0; d < dim; ++d)
            e1[d] = (curve.component(ip, d) - curve.component(i, d)) / seg[i];
        total += unit_angle(e0, e1);
        e0 = e1;
    }
    return total;
}

double curvature_square_integral(const Curve& curve, std::span<const double> k_mag) {
    const std::size_t n = curve.size();
    const auto seg = curve.segment_lengths();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hm = seg[(i == 0) ? n - 1 : i - 1];
        acc += k_mag[i] * k_mag[i] * 0.5 * (hm + seg[i]);
    }
    return acc;
}

Curve resample_uniform(const Curve& curve, std::size_t n_out, std::optional<double> anchor) {
    if (n_out < 8) throw std::invalid_argument("resample_uniform: need at least 8 vertices");
    const CurveInterpolant interp(curve);
    const double L = curve.length();
    const double s0 = anchor.value_or(0.0);
    const std::size_t dim = curve.dim();
    std::vector<double> soa(dim * n_out);
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double s = s0 + L * static_cast<double>(i) / static_cast<double>(n_out);
        interp.eval(s, p);
        for (std::size_t d = 0; d < dim; ++d) soa[d * n_out + i] = p[d];
    }
    return Curve(dim, n_out, std::move(soa));
}

}  // namespace scsf
