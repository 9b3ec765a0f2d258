#include "scsf/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scsf/ratio.hpp"

namespace scsf {

const char* to_string(SingularityType type) {
    switch (type) {
        case SingularityType::TypeI: return "Type I";
        case SingularityType::TypeII: return "Type II";
        case SingularityType::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

BlowupFit estimate_blowup_time(const FlowTrace& trace) {
    BlowupFit fit;
    const auto& rows = trace.rows;
    const std::size_t m = rows.size();
    const std::size_t tail = std::max<std::size_t>(20, m / 5);
    if (m < tail || tail < 20) {
        fit.note = "not enough records";
        return fit;
    }
    const std::size_t begin = m - tail;
    for (std::size_t k = begin + 1; k < m; ++k) {
        if (rows[k].k_max < rows[k - 1].k_max * (1.0 - 1e-9)) {
            fit.note = "k_max not increasing over the tail";
            return fit;
        }
    }
    // linear least squares: y = c0 + c1 t with y = 1/k_max^2
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t k = begin; k < m; ++k) {
        const double t = rows[k].t;
        const double y = 1.0 / (rows[k].k_max * rows[k].k_max);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double nm = static_cast<double>(tail);
    const double denom = nm * stt - st * st;
    if (denom == 0.0) {
        fit.note = "degenerate time grid";
        return fit;
    }
    const double c1 = (nm * sty - st * sy) / denom;
    const double c0 = (sy - c1 * st) / nm;
    if (!(c1 < 0.0)) {
        fit.note = "1/k_max^2 not decreasing";
        return fit;
    }
    fit.T_est = -c0 / c1;
    if (fit.T_est <= rows.back().t) {
        fit.note = "estimated blow-up time not beyond the trace";
        return fit;
    }
    double ss = 0.0, mean_abs = 0.0;
    for (std::size_t k = begin; k < m; ++k) {
        const double y = 1.0 / (rows[k].k_max * rows[k].k_max);
        const double r = y - (c0 + c1 * rows[k].t);
        ss += r * r;
        mean_abs += std::abs(y);
    }
    mean_abs /= nm;
    fit.residual = std::sqrt(ss / nm) / mean_abs;
    fit.tail_records = tail;
    fit.ok = true;
    return fit;
}

Classification classify_type(const FlowTrace& trace, double T_est,
                             const ClassifyParams& params) {
    Classification out;
    const auto& rows = trace.rows;
    if (rows.empty()) return out;
    const double delta = T_est - rows.back().t;
    if (!(delta > 0.0)) return out;

    std::vector<double> q;
    for (const auto& row : rows) {
        const double gap = T_est - row.t;
        if (gap >= delta && gap <= 10.0 * delta)
            q.push_back(row.k_max * row.k_max * gap);
    }
    out.tail_records = q.size();
    if (q.size() < params.min_tail_records) return out;

    out.q_min = *std::min_element(q.begin(), q.end());
    out.q_max = *std::max_element(q.begin(), q.end());
    const bool inside = out.q_min >= params.q_lo && out.q_max <= params.q_hi;
    const bool bounded_drift = out.q_max / out.q_min < params.drift_ratio;
    if (inside && bounded_drift) {
        out.type = SingularityType::TypeI;
        return out;
    }
    // rows are time-ordered, so q[] runs toward the singular time; Type II
    // means Q escaping upward across the tail.
    bool monotone_up = true;
    for (std::size_t k = 1; k < q.size(); ++k)
        if (q[k] < q[k - 1] * (1.0 - 1e-9)) {
            monotone_up = false;
            break;
        }
    if (monotone_up && q.back() > params.q_hi) out.type = SingularityType::TypeII;
    return out;
}

Curve rescale_curve(const Curve& curve, double t, double T_est) {
    if (!(T_est > t)) throw std::invalid_argument("rescale_curve: need t < T_est");
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    const double scale = 1.0 / std::sqrt(2.0 * (T_est - t));

    // arclength-weighted centroid
    std::vector<double> c(dim, 0.0);
    const auto seg = curve.segment_lengths();
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (seg[(i == 0) ? n - 1 : i - 1] + seg[i]);
        wsum += w;
        for (std::size_t d = 0; d < dim; ++d) c[d] += w * curve.component(i, d);
    }
    for (auto& v : c) v /= wsum;

    std::vector<double> soa(dim * n);
    for (std::size_t d = 0; d < dim; ++d)
        for (std::size_t i = 0; i < n; ++i)
            soa[d * n + i] = (curve.component(i, d) - c[d]) * scale;
    return Curve(dim, n, std::move(soa));
}

namespace {

// Jacobi eigenvalues of a small symmetric matrix (row-major, dim x dim).
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t dim) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = p + 1; q < dim; ++q) off += a[p * dim + q] * a[p * dim + q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const double apq = a[p * dim + q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = a[p * dim + p];
                const double aqq = a[q * dim + q];
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < dim; ++k) {
                    const double akp = a[k * dim + p];
                    const double akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < dim; ++k) {
                    const double apk = a[p * dim + k];
                    const double aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(dim);
    for (std::size_t d = 0; d < dim; ++d) eig[d] = a[d * dim + d];
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace

RoundnessReport roundness(const Curve& curve, bool with_ratio) {
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();
    const auto seg = curve.segment_lengths();

    std::vector<double> c(dim, 0.0);
    std::vector<double> w(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 * (seg[(i == 0) ? n - 1 : i - 1] + seg[i]);
        wsum += w[i];
        for (std::size_t d = 0; d < dim; ++d) c[d] += w[i] * curve.component(i, d);
    }
    for (auto& v : c) v /= wsum;

    RoundnessReport rep;
    rep.r_max = 0.0;
    rep.r_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = curve.component(i, d) - c[d];
            r2 += diff * diff;
        }
        const double r = std::sqrt(r2);
        rep.r_max = std::max(rep.r_max, r);
        rep.r_min = std::min(rep.r_min, r);
    }
    if (rep.r_min <= 1e-12 * curve.length())
        throw std::runtime_error("roundness: centroid distance degenerate");
    rep.roundness = rep.r_max / rep.r_min;

    std::vector<double> cov(dim * dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d)
            for (std::size_t e = d; e < dim; ++e) {
                const double vd = curve.component(i, d) - c[d];
                const double ve = curve.component(i, e) - c[e];
                cov[d * dim + e] += w[i] * vd * ve;
            }
    for (std::size_t d = 0; d < dim; ++d)
        for (std::size_t e = 0; e < d; ++e) cov[d * dim + e] = cov[e * dim + d];
    const std::vector<double> eig = symmetric_eigenvalues(std::move(cov), dim);
    rep.planarity_defect = (eig.back() > 0.0) ? std::max(0.0, eig.front()) / eig.back() : 0.0;

    if (with_ratio) rep.min_dpsi = min_huisken_ratio(curve).min_ratio;
    return rep;
}

SingularityReport build_singularity_report(const FlowTrace& trace,
                                           const ClassifyParams& params) {
    SingularityReport rep;
    rep.fit = estimate_blowup_time(trace);
    if (rep.fit.ok) {
        rep.classification = classify_type(trace, rep.fit.T_est, params);
        const double T = rep.fit.T_est;
        for (const auto& row : trace.rows) {
            rep.record_t.push_back(row.t);
            const double gap = T - row.t;
            rep.q_series.push_back(gap > 0.0 ? row.k_max * row.k_max * gap : 0.0);
            rep.roundness_series.push_back(row.r_min > 0.0 ? row.r_max / row.r_min : 0.0);
            rep.rescaled_radius_series.push_back(
                gap > 0.0 ? row.r_max / std::sqrt(2.0 * gap) : 0.0);
        }
        const double delta = T - trace.rows.back().t;
        rep.q_tail_sup = 0.0;
        for (std::size_t k = 0; k < trace.rows.size(); ++k) {
            const double gap = T - trace.rows[k].t;
            if (gap <= 10.0 * delta) rep.q_tail_sup = std::max(rep.q_tail_sup, rep.q_series[k]);
        }
    } else {
        for (const auto& row : trace.rows) {
            rep.record_t.push_back(row.t);
            rep.q_series.push_back(0.0);
            rep.roundness_series.push_back(row.r_min > 0.0 ? row.r_max / row.r_min : 0.0);
            rep.rescaled_radius_series.push_back(0.0);
        }
    }
    if (!trace.rows.empty()) {
        rep.final_min_dpsi = trace.rows.back().min_dpsi;
        rep.final_min_I = trace.rows.back().min_I;
    }
    return rep;
}

}  // namespace scsf
