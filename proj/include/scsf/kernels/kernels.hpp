#pragma once

#include <cstddef>
#include <string_view>

// Hot inner loops of the per-step monitors. Each kernel has a scalar
// reference implementation and an AVX2 variant; the dispatched entry points
// pick the widest set the CPU supports at runtime. The environment variable
// SCSF_KERNEL=scalar|avx2 forces a specific set (used by the equivalence
// tests).

namespace scsf::kernels {

// All-pairs scan minimizing (d/psi)^2 over vertex pairs i < j of a closed
// curve. Coordinates are dim-major SoA; sin_half/cos_half hold
// sin(pi*s_i/L) and cos(pi*s_i/L), so that for i < j
//   psi_ij = psi_scale * (sin_half[j]*cos_half[i] - cos_half[j]*sin_half[i])
// is positive (0 < s_j - s_i < L).
struct RatioScanInput {
    const double* const* coords = nullptr;
    std::size_t dim = 0;
    const double* sin_half = nullptr;
    const double* cos_half = nullptr;
    std::size_t count = 0;
    double psi_scale = 0.0;  // L / pi
};

struct RatioScanResult {
    double ratio2 = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

// Squared distance from a query point to a closed polyline. inv_seg2 caches
// 1/|v[k+1]-v[k]|^2 per segment (count segments, cyclic).
struct PolylineDistInput {
    const double* const* coords = nullptr;
    std::size_t dim = 0;
    const double* inv_seg2 = nullptr;
    std::size_t count = 0;
};

RatioScanResult min_ratio_scan_scalar(const RatioScanInput& in);
double point_polyline_dist2_scalar(const PolylineDistInput& in, const double* q);

#if defined(__x86_64__) || defined(_M_X64)
RatioScanResult min_ratio_scan_avx2(const RatioScanInput& in);
double point_polyline_dist2_avx2(const PolylineDistInput& in, const double* q);
#endif

// Runtime-dispatched entry points.
RatioScanResult min_ratio_scan(const RatioScanInput& in);
double point_polyline_dist2(const PolylineDistInput& in, const double* q);

// "avx2" or "scalar".
std::string_view active_kernel_isa();

}  // namespace scsf::kernels
