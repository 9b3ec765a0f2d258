#include <algorithm>
#include <limits>

#include "scsf/kernels/kernels.hpp"

namespace scsf::kernels {

RatioScanResult min_ratio_scan_scalar(const RatioScanInput& in) {
    const std::size_t n = in.count;
    const double scale2 = in.psi_scale * in.psi_scale;
    RatioScanResult best{std::numeric_limits<double>::infinity(), 0, 0};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sci = in.sin_half[i];
        const double cci = in.cos_half[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < in.dim; ++d) {
                const double diff = in.coords[d][j] - in.coords[d][i];
                d2 += diff * diff;
            }
            const double sp = in.sin_half[j] * cci - in.cos_half[j] * sci;
            const double q = d2 / (scale2 * sp * sp);
            if (q < best.ratio2) {
                best.ratio2 = q;
                best.i = i;
                best.j = j;
            }
        }
    }
    return best;
}

double point_polyline_dist2_scalar(const PolylineDistInput& in, const double* q) {
    const std::size_t n = in.count;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kp = (k + 1 == n) ? 0 : k + 1;
        double qa_e = 0.0;
        for (std::size_t d = 0; d < in.dim; ++d) {
            const double a = in.coords[d][k];
            const double e = in.coords[d][kp] - a;
            qa_e += (q[d] - a) * e;
        }
        double t = qa_e * in.inv_seg2[k];
        t = std::clamp(t, 0.0, 1.0);
        double d2 = 0.0;
        for (std::size_t d = 0; d < in.dim; ++d) {
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
