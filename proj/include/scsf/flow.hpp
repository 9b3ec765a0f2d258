#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scsf/curve.hpp"
#include "scsf/symmetry.hpp"

// Forward-Euler time integration of gamma_t = gamma_ss with timestep
// dt = sigma * (min segment length)^2, periodic anchored resampling, anchor
// tracking, and the per-record monitor battery.

namespace scsf {

struct FlowConfig {
    FourierSpec initial;
    std::size_t vertices = 512;  // flow vertex count N (>= 64)
    double sigma = 0.25;         // timestep safety factor, in (0, 0.5]
    std::size_t resample_every = 25;  // 0 disables
    bool symmetrize = false;          // applied after each resample
    std::vector<Hyperplane> planes;   // monitored planes
    std::size_t record_every = 50;
    // stop conditions
    std::size_t max_steps = 100000;
    double length_floor_frac = 0.05;       // 0 disables
    double curvature_cap_factor = 200.0;   // cap = factor / L(0); 0 disables
    double timestep_floor = 1e-15;
    // monitors
    bool monitor_ratio = true;
    bool monitor_symmetric = true;
    std::size_t symmetric_plane = 0;  // index into planes
    bool monitor_projection = true;
    bool monitor_diagnostics = true;
    double symmetry_tol = 1e-4;
};

void validate(const FlowConfig& config);

struct FlowState {
    double t = 0.0;
    std::size_t step = 0;
    Curve curve;
    std::vector<double> k_soa;  // cached curvature vectors, dim-major
    std::vector<double> k_mag;
    double k_max = 0.0;
    std::optional<double> anchor_s;    // tracked crossing A(t), arclength
    std::vector<double> anchor_pos;
};

enum class StopReason {
    MaxSteps,
    LengthFloor,
    CurvatureCap,
    AbortedDegeneracy,
    AbortedTimestep,
};

const char* to_string(StopReason reason);

struct TraceRow {
    double t = 0.0;
    std::size_t step = 0;
    double length = 0.0;
    double k_max = 0.0;
    double int_k2 = 0.0;
    double min_dpsi = 0.0;   // nan when the monitor is off
    double min_I = 0.0;      // nan when off or pairing refused
    double argmin_s0 = 0.0;  // 0 at boundary minima
    std::vector<int> crossings;  // per monitored plane; -1 on tangential contact
    int proj_injective = -1;     // 1/0, -1 when off
    int proj_convex = -1;
    double sym_defect = 0.0;     // nan when off
    double var_res1 = 0.0, var_res2 = 0.0, geo_slack = 0.0;  // nan when skipped
    int rate_ok = -1;            // 1/0, -1 when not applicable; filled post-run
    // not serialized into trace.csv:
    double rate_bound = 0.0;
    double r_max = 0.0, r_min = 0.0, planarity = 0.0;
    bool boundary_min = false;
    bool pairing_ok = false;
};

struct FlowTrace {
    std::vector<TraceRow> rows;
    double initial_length = 0.0;
    StopReason stop = StopReason::MaxSteps;
    std::string abort_detail;
    std::size_t total_steps = 0;
    double final_t = 0.0;
    std::size_t anchor_jumps = 0;
    // monitor violations observed during the run
    bool pairing_refused = false;
    bool projection_violation = false;
    bool sturmian_violation = false;
    std::vector<std::string> warnings;

    bool any_violation() const {
        return pairing_refused || projection_violation || sturmian_violation;
    }
};

// Builds the initial state: synthesizes the Fourier curve, resamples it to
// config.vertices uniform arclength vertices (anchored at the symmetric
// plane crossing when that monitor is enabled), caches the curvature.
FlowState initial_state(const FlowConfig& config);

// One forward-Euler step plus cadence resampling/symmetrization and anchor
// tracking. Throws on degeneracy (message carries the abort reason).
void step(FlowState& state, const FlowConfig& config);

// Full run: iterates step, records monitors every record_every steps, stops
// on the first stop condition. on_record (optional) sees every recorded
// state, including the final one.
FlowTrace run(const FlowConfig& config,
              const std::function<void(const FlowState&, const TraceRow&)>& on_record = {});

// int k^2 ds - 4 pi^2 / L (Fenchel lower bound slack).
double fenchel_check(const FlowState& state);

// Max over interior records (t <= t_max) of the relative residual between
// the centered dL/dt and -int k^2 ds.
double length_decay_check(const FlowTrace& trace, double t_max);

// True when the recorded crossing counts for the given plane never increase
// (tangential-contact rows are skipped).
bool crossing_monotonicity_monitor(const FlowTrace& trace, std::size_t plane_index);

}  // namespace scsf
