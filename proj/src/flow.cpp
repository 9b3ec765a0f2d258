#include "scsf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "scsf/projection.hpp"
#include "scsf/ratio.hpp"
#include "scsf/singularity.hpp"
#include "scsf/vecops.hpp"

namespace scsf {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

void refresh_curvature(FlowState& state) {
    curvature_profile(state.curve, state.k_soa, state.k_mag);
    state.k_max = *std::max_element(state.k_mag.begin(), state.k_mag.end());
}

// Re-locates the tracked crossing A(t) on the current curve. Returns true
// when the anchor moved suspiciously far (an anchor jump).
bool track_anchor(FlowState& state, const Hyperplane& plane) {
    CrossingSet cs;
    try {
        cs = count_plane_crossings(state.curve, plane);
    } catch (const std::runtime_error&) {
        return false;  // tangential contact: keep the previous anchor
    }
    if (cs.crossings.empty()) {
        state.anchor_s.reset();
        return false;
    }
    const Crossing* pick = nullptr;
    if (!state.anchor_pos.empty()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cs.crossings) {
            const double d2 = dist2(c.position, state.anchor_pos);
            if (d2 < best) {
                best = d2;
                pick = &c;
            }
        }
    } else {
        for (const auto& c : cs.crossings)
            if (c.slope > 0.0) {
                pick = &c;
                break;
            }
        if (pick == nullptr) pick = &cs.crossings.front();
    }
    bool jump = false;
    if (!state.anchor_pos.empty()) {
        const double moved = dist(pick->position, state.anchor_pos);
        const double mean_h = state.curve.length() / static_cast<double>(state.curve.size());
        jump = moved > 10.0 * mean_h;
    }
    state.anchor_s = pick->arclength;
    state.anchor_pos = pick->position;
    return jump;
}

}  // namespace

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::MaxSteps: return "reached max steps";
        case StopReason::LengthFloor: return "length floor";
        case StopReason::CurvatureCap: return "curvature cap";
        case StopReason::AbortedDegeneracy: return "aborted: collision/degeneracy";
        case StopReason::AbortedTimestep: return "aborted: timestep collapse";
    }
    return "unknown";
}

void validate(const FlowConfig& config) {
    if (!(config.sigma > 0.0) || config.sigma > 0.5)
        throw std::invalid_argument("FlowConfig: sigma must lie in (0, 0.5]");
    if (config.vertices < 64)
        throw std::invalid_argument("FlowConfig: need at least 64 vertices");
    if (config.record_every == 0)
        throw std::invalid_argument("FlowConfig: record_every must be positive");
    if (config.monitor_symmetric && config.symmetric_plane >= config.planes.size() &&
        !config.planes.empty())
        throw std::invalid_argument("FlowConfig: symmetric_plane index out of range");
    validate(config.initial);
}

FlowState initial_state(const FlowConfig& config) {
    validate(config);
    Curve synth = synthesize_fourier_curve(config.initial);

    std::optional<double> anchor;
    if (config.monitor_symmetric && !config.planes.empty()) {
        const auto& plane = config.planes[config.symmetric_plane];
        try {
            const CrossingSet cs = count_plane_crossings(synth, plane);
            for (const auto& c : cs.crossings)
                if (c.slope > 0.0) {
                    anchor = c.arclength;
                    break;
                }
        } catch (const std::runtime_error&) {
            // leave unanchored; the pairing monitor will report the failure
        }
    }

    FlowState state{0.0, 0, resample_uniform(synth, config.vertices, anchor), {}, {}, 0.0,
                    std::nullopt, {}};
    refresh_curvature(state);
    if (config.monitor_symmetric && !config.planes.empty())
        track_anchor(state, config.planes[config.symmetric_plane]);
    return state;
}

void step(FlowState& state, const FlowConfig& config) {
    const Curve& curve = state.curve;
    const std::size_t n = curve.size();
    const std::size_t dim = curve.dim();

    const auto seg = curve.segment_lengths();
    const double h_min = *std::min_element(seg.begin(), seg.end());
    const double dt = config.sigma * h_min * h_min;
    if (dt < config.timestep_floor)
        throw std::runtime_error("timestep collapse");

    std::vector<double> soa(curve.raw().begin(), curve.raw().end());
    for (std::size_t q = 0; q < dim * n; ++q) soa[q] += dt * state.k_soa[q];

    try {
        state.curve = Curve(dim, n, std::move(soa));
    } catch (const std::runtime_error&) {
        throw std::runtime_error("collision/degeneracy");
    }
    state.t += dt;
    state.step += 1;

    if (config.resample_every != 0 && state.step % config.resample_every == 0) {
        std::optional<double> anchor;
        if (config.monitor_symmetric && !config.planes.empty()) {
            // re-locate the crossing on the stepped curve before resampling
            track_anchor(state, config.planes[config.symmetric_plane]);
            anchor = state.anchor_s;
        }
        state.curve = resample_uniform(state.curve, config.vertices, anchor);
        if (config.symmetrize && !config.planes.empty())
            state.curve = symmetrize_curve(state.curve, config.planes);
    }
    refresh_curvature(state);
}

namespace {

struct MonitorContext {
    const FlowConfig& config;
    FlowTrace& trace;
    std::optional<int> last_crossing_count;  // symmetric_plane Sturmian memory
    double tol_rate = 1e-3;
};

TraceRow record_row(FlowState& state, MonitorContext& ctx) {
    const FlowConfig& config = ctx.config;
    TraceRow row;
    row.t = state.t;
    row.step = state.step;
    row.length = state.curve.length();
    row.k_max = state.k_max;
    row.int_k2 = curvature_square_integral(state.curve, state.k_mag);
    row.min_dpsi = kNan;
    row.min_I = kNan;
    row.argmin_s0 = kNan;
    row.sym_defect = kNan;
    row.var_res1 = row.var_res2 = row.geo_slack = kNan;

    if (config.monitor_ratio) {
        const RatioReport rr = min_huisken_ratio(state.curve);
        row.min_dpsi = rr.min_ratio;
    }

    row.crossings.reserve(config.planes.size());
    for (const auto& plane : config.planes) {
        int count = -1;
        try {
            count = static_cast<int>(count_plane_crossings(state.curve, plane).count());
        } catch (const std::runtime_error&) {
            ctx.trace.warnings.push_back("tangential contact at step " +
                                         std::to_string(state.step));
        }
        row.crossings.push_back(count);
    }

    if (config.monitor_symmetric && !config.planes.empty()) {
        const auto& plane = config.planes[config.symmetric_plane];
        const int count = row.crossings[config.symmetric_plane];
        if (count >= 0 && ctx.last_crossing_count && count > *ctx.last_crossing_count)
            ctx.trace.sturmian_violation = true;
        if (count >= 0) ctx.last_crossing_count = count;

        try {
            row.sym_defect = symmetry_defect(state.curve, plane);
            SymmetricPairing pairing = build_symmetric_pairing(
                state.curve, plane, config.symmetry_tol, state.anchor_pos);
            row.pairing_ok = true;
            const SymmetricRatioReport sym = min_symmetric_ratio(state.curve, pairing);
            row.min_I = sym.min_I;
            row.argmin_s0 = sym.argmin_s0;
            row.boundary_min = sym.boundary_is_min;
            if (config.monitor_diagnostics && !sym.boundary_is_min) {
                const SymmetricPairing frame = sym.swapped ? pairing.swapped() : pairing;
                const VariationDiagnostics vd = variation_diagnostics(frame, sym.argmin_s0);
                row.var_res1 = vd.r1;
                row.var_res2 = vd.r2;
                row.geo_slack =
                    geodesic_bound_slack(state.curve, state.k_mag, frame, sym.argmin_s0);
                const RateBound rb = ratio_rate_bound(state.curve, state.k_mag, frame,
                                                      sym.argmin_s0, 0.0, ctx.tol_rate);
                row.rate_bound = rb.bound;  // verdict needs I_t, filled post-run
            }
        } catch (const std::runtime_error&) {
            ctx.trace.pairing_refused = true;
        }
    }

    if (config.monitor_projection) {
        try {
            const ProjectionReport pr = is_one_to_one_convex_projection(state.curve);
            row.proj_injective = pr.injective ? 1 : 0;
            row.proj_convex = pr.convex ? 1 : 0;
            if (!pr.injective || !pr.convex) ctx.trace.projection_violation = true;
        } catch (const std::runtime_error&) {
            row.proj_injective = 0;
            row.proj_convex = 0;
            ctx.trace.projection_violation = true;
        }
    }

    const RoundnessReport rr = roundness(state.curve, /*with_ratio=*/false);
    row.r_max = rr.r_max;
    row.r_min = rr.r_min;
    row.planarity = rr.planarity_defect;
    return row;
}

void fill_rate_verdicts(FlowTrace& trace, double tol_rate) {
    auto& rows = trace.rows;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        TraceRow& row = rows[k];
        row.rate_ok = -1;
        if (!row.pairing_ok || row.boundary_min) continue;  // boundary: I_t = d/dt 1 = 0
        if (k == 0 || k + 1 >= rows.size()) continue;
        const TraceRow& prev = rows[k - 1];
        const TraceRow& next = rows[k + 1];
        if (!prev.pairing_ok || !next.pairing_ok) continue;
        if (std::isnan(prev.min_I) || std::isnan(next.min_I)) continue;
        const double i_t = (next.min_I - prev.min_I) / (next.t - prev.t);
        const bool ok =
            i_t >= row.rate_bound - tol_rate * std::max(1.0, std::abs(row.rate_bound));
        row.rate_ok = ok ? 1 : 0;
    }
}

}  // namespace

FlowTrace run(const FlowConfig& config,
              const std::function<void(const FlowState&, const TraceRow&)>& on_record) {
    FlowState state = initial_state(config);
    FlowTrace trace;
    trace.initial_length = state.curve.length();
    const double cap = (config.curvature_cap_factor > 0.0)
                           ? config.curvature_cap_factor / trace.initial_length
                           : std::numeric_limits<double>::infinity();
    const double floor = config.length_floor_frac * trace.initial_length;

    MonitorContext ctx{config, trace, std::nullopt, 1e-3};

    while (true) {
        if (state.step >= config.max_steps) {
            trace.stop = StopReason::MaxSteps;
            break;
        }
        if (config.length_floor_frac > 0.0 && state.curve.length() < floor) {
            trace.stop = StopReason::LengthFloor;
            break;
        }
        if (state.k_max > cap) {
            trace.stop = StopReason::CurvatureCap;
            break;
        }
        if (state.step % config.record_every == 0) {
            TraceRow row = record_row(state, ctx);
            if (on_record) on_record(state, row);
            trace.rows.push_back(std::move(row));
        }
        try {
            step(state, config);
            if (config.monitor_symmetric && !config.planes.empty()) {
                if (track_anchor(state, config.planes[config.symmetric_plane]))
                    ++trace.anchor_jumps;
            }
        } catch (const std::runtime_error& err) {
            trace.stop = (std::string(err.what()) == "timestep collapse")
                             ? StopReason::AbortedTimestep
                             : StopReason::AbortedDegeneracy;
            trace.abort_detail = err.what();
            break;
        }
    }

    // Final record at the stopping state (unless nothing ran or it was just
    // recorded).
    if (state.step > 0 && (trace.rows.empty() || trace.rows.back().step != state.step)) {
        TraceRow row = record_row(state, ctx);
        if (on_record) on_record(state, row);
        trace.rows.push_back(std::move(row));
    }

    trace.total_steps = state.step;
    trace.final_t = state.t;
    fill_rate_verdicts(trace, ctx.tol_rate);
    return trace;
}

double fenchel_check(const FlowState& state) {
    const double int_k2 = curvature_square_integral(state.curve, state.k_mag);
    return int_k2 - 4.0 * kPi * kPi / state.curve.length();
}

double length_decay_check(const FlowTrace& trace, double t_max) {
    const auto& rows = trace.rows;
    if (rows.size() < 3)
        throw std::invalid_argument("length_decay_check: need at least 3 records");
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        if (rows[k].t > t_max) break;
        const double t0 = rows[k - 1].t, t1 = rows[k].t, t2 = rows[k + 1].t;
        const double L0 = rows[k - 1].length, L1 = rows[k].length, L2 = rows[k + 1].length;
        // three-point derivative on the nonuniform record grid
        const double dLdt = L0 * (t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                            L1 * (2.0 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                            L2 * (t1 - t0) / ((t2 - t0) * (t2 - t1));
        const double residual = std::abs(dLdt + rows[k].int_k2) / rows[k].int_k2;
        worst = std::max(worst, residual);
    }
    return worst;
}

bool crossing_monotonicity_monitor(const FlowTrace& trace, std::size_t plane_index) {
    int last = std::numeric_limits<int>::max();
    for (const auto& row : trace.rows) {
        if (plane_index >= row.crossings.size()) continue;
        const int c = row.crossings[plane_index];
        if (c < 0) continue;  // tangential contact, skipped
        if (c > last) return false;
        last = c;
    }
    return true;
}

}  // namespace scsf
