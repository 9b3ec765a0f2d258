// AVX2 variants of the monitor kernels. This translation unit is compiled
// with -mavx2 -mfma; callers must check CPU support before dispatching here.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <limits>

#include "scsf/kernels/kernels.hpp"

namespace scsf::kernels {

namespace {

constexpr std::size_t kMaxDim = 8;

inline void update_best(RatioScanResult& best, double q, std::size_t i, std::size_t j) {
    if (q < best.ratio2) {
        best.ratio2 = q;
        best.i = i;
        best.j = j;
    }
}

}  // namespace

RatioScanResult min_ratio_scan_avx2(const RatioScanInput& in) {
    const std::size_t n = in.count;
    const std::size_t dim = in.dim;
    const double scale2 = in.psi_scale * in.psi_scale;
    RatioScanResult best{std::numeric_limits<double>::infinity(), 0, 0};
    if (dim > kMaxDim) return min_ratio_scan_scalar(in);

    const __m256d vscale2 = _mm256_set1_pd(scale2);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sci = in.sin_half[i];
        const double cci = in.cos_half[i];
        __m256d ci[kMaxDim];
        for (std::size_t d = 0; d < dim; ++d) ci[d] = _mm256_set1_pd(in.coords[d][i]);
        const __m256d vsci = _mm256_set1_pd(sci);
        const __m256d vcci = _mm256_set1_pd(cci);

        __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        __m256i vidx = _mm256_setzero_si256();

        std::size_t j = i + 1;
        for (; j + 4 <= n; j += 4) {
            __m256d d2 = _mm256_setzero_pd();
            for (std::size_t d = 0; d < dim; ++d) {
                const __m256d diff =
                    _mm256_sub_pd(_mm256_loadu_pd(in.coords[d] + j), ci[d]);
                d2 = _mm256_fmadd_pd(diff, diff, d2);
            }
            const __m256d sj = _mm256_loadu_pd(in.sin_half + j);
            const __m256d cj = _mm256_loadu_pd(in.cos_half + j);
            const __m256d sp =
                _mm256_fmsub_pd(sj, vcci, _mm256_mul_pd(cj, vsci));
            const __m256d psi2 = _mm256_mul_pd(vscale2, _mm256_mul_pd(sp, sp));
            const __m256d q = _mm256_div_pd(d2, psi2);
            const __m256d lt = _mm256_cmp_pd(q, vmin, _CMP_LT_OQ);
            vmin = _mm256_blendv_pd(vmin, q, lt);
            const __m256i jv = _mm256_set_epi64x(
                static_cast<std::int64_t>(j + 3), static_cast<std::int64_t>(j + 2),
                static_cast<std::int64_t>(j + 1), static_cast<std::int64_t>(j));
            vidx = _mm256_castpd_si256(_mm256_blendv_pd(
                _mm256_castsi256_pd(vidx), _mm256_castsi256_pd(jv), lt));
        }

        alignas(32) double vals[4];
        alignas(32) std::int64_t idxs[4];
        _mm256_store_pd(vals, vmin);
        _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), vidx);
        for (int lane = 0; lane < 4; ++lane) {
            const double v = vals[lane];
            const std::size_t jj = static_cast<std::size_t>(idxs[lane]);
            if (v < best.ratio2 || (v == best.ratio2 && (i < best.i || (i == best.i && jj < best.j))))
                best = RatioScanResult{v, i, jj};
        }

        for (; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = in.coords[d][j] - in.coords[d][i];
                d2 += diff * diff;
            }
            const double sp = in.sin_half[j] * cci - in.cos_half[j] * sci;
            update_best(best, d2 / (scale2 * sp * sp), i, j);
        }
    }
    return best;
}

double point_polyline_dist2_avx2(const PolylineDistInput& in, const double* q) {
    const std::size_t n = in.count;
    const std::size_t dim = in.dim;
    if (dim > kMaxDim || n < 8) return point_polyline_dist2_scalar(in, q);

    __m256d vq[kMaxDim];
    for (std::size_t d = 0; d < dim; ++d) vq[d] = _mm256_set1_pd(q[d]);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());

    std::size_t k = 0;
    // main loop needs coords at k+4, so stop at n-5
    for (; k + 5 <= n; k += 4) {
        __m256d qa[kMaxDim], ev[kMaxDim];
        __m256d dotqe = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d a = _mm256_loadu_pd(in.coords[d] + k);
            const __m256d b = _mm256_loadu_pd(in.coords[d] + k + 1);
            ev[d] = _mm256_sub_pd(b, a);
            qa[d] = _mm256_sub_pd(vq[d], a);
            dotqe = _mm256_fmadd_pd(qa[d], ev[d], dotqe);
        }
        __m256d t = _mm256_mul_pd(dotqe, _mm256_loadu_pd(in.inv_seg2 + k));
        t = _mm256_min_pd(one, _mm256_max_pd(zero, t));
        __m256d d2 = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d r = _mm256_fnmadd_pd(t, ev[d], qa[d]);
            d2 = _mm256_fmadd_pd(r, r, d2);
        }
        vbest = _mm256_min_pd(vbest, d2);
    }

    alignas(32) double vals[4];
    _mm256_store_pd(vals, vbest);
    double best = std::min(std::min(vals[0], vals[1]), std::min(vals[2], vals[3]));

    for (; k < n; ++k) {
        const std::size_t kp = (k + 1 == n) ? 0 : k + 1;
        double qa_e = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double a = in.coords[d][k];
            const double e = in.coords[d][kp] - a;
            qa_e += (q[d] - a) * e;
        }
        double t = std::clamp(qa_e * in.inv_seg2[k], 0.0, 1.0);
        double d2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double a = in.coords[d][k];
            const double e = in.coords[d][kp] - a;
            const double r = q[d] - a - t * e;
            d2 += r * r;
        }
        best = std::min(best, d2);
    }
    return best;
}

}  // namespace scsf::kernels

#endif  // x86_64
