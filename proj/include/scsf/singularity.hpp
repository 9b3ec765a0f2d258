#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scsf/curve.hpp"
#include "scsf/flow.hpp"

// Post-processing of a flow trace: blow-up time estimation, Type I vs
// Type II classification, parabolic rescaling, roundness measurement.

namespace scsf {

struct BlowupFit {
    bool ok = false;
    double T_est = 0.0;
    double residual = 0.0;      // relative RMS of the linear fit of 1/k_max^2
    std::size_t tail_records = 0;
    std::string note;
};

// Least-squares fit 1/k_max^2 ~ a (T - t) over the last 20% of records
// (>= 20 of them, k_max increasing).
BlowupFit estimate_blowup_time(const FlowTrace& trace);

enum class SingularityType { TypeI, TypeII, Inconclusive };

const char* to_string(SingularityType type);

struct ClassifyParams {
    double q_lo = 0.1;
    double q_hi = 10.0;
    double drift_ratio = 3.0;
    std::size_t min_tail_records = 6;
};

struct Classification {
    SingularityType type = SingularityType::Inconclusive;
    double q_min = 0.0, q_max = 0.0;  // over the final decade of T - t
    std::size_t tail_records = 0;
};

// Type I when Q = k_max^2 (T - t) stays inside [q_lo, q_hi] with bounded
// drift over the final decade of T - t; Type II when Q escapes upward
// monotonically.
Classification classify_type(const FlowTrace& trace, double T_est,
                             const ClassifyParams& params = {});

// Parabolic rescaling (gamma - centroid) / sqrt(2 (T_est - t)).
Curve rescale_curve(const Curve& curve, double t, double T_est);

struct RoundnessReport {
    double roundness = 0.0;  // max_i |p_i - c| / min_i |p_i - c|
    double r_max = 0.0, r_min = 0.0;
    double planarity_defect = 0.0;  // lambda_min / lambda_max of the covariance
    double min_dpsi = 0.0;          // 0 unless with_ratio
};

RoundnessReport roundness(const Curve& curve, bool with_ratio = true);

struct SingularityReport {
    BlowupFit fit;
    Classification classification;
    std::vector<double> record_t;
    std::vector<double> q_series;
    std::vector<double> roundness_series;       // from recorded r_max / r_min
    std::vector<double> rescaled_radius_series; // r_max / sqrt(2 (T - t))
    double q_tail_sup = 0.0;
    double final_min_dpsi = 0.0;
    double final_min_I = 0.0;
};

SingularityReport build_singularity_report(const FlowTrace& trace,
                                           const ClassifyParams& params = {});

}  // namespace scsf
