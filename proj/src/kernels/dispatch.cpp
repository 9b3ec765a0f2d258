#include <cstdlib>
#include <cstring>

#include "scsf/kernels/kernels.hpp"

namespace scsf::kernels {

namespace {

struct KernelSet {
    RatioScanResult (*ratio_scan)(const RatioScanInput&);
    double (*poly_dist2)(const PolylineDistInput&, const double*);
    const char* name;
};

constexpr KernelSet kScalar{&min_ratio_scan_scalar, &point_polyline_dist2_scalar, "scalar"};

KernelSet select() {
    const char* env = std::getenv("SCSF_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (has_avx2 && (!env || std::strcmp(env, "avx2") == 0))
        return KernelSet{&min_ratio_scan_avx2, &point_polyline_dist2_avx2, "avx2"};
#endif
    return kScalar;
}

const KernelSet& active() {
    static const KernelSet set = select();
    return set;
}

}  // namespace

RatioScanResult min_ratio_scan(const RatioScanInput& in) { return active().ratio_scan(in); }

double point_polyline_dist2(const PolylineDistInput& in, const double* q) {
    return active().poly_dist2(in, q);
}

std::string_view active_kernel_isa() { return active().name; }

}  // namespace scsf::kernels
