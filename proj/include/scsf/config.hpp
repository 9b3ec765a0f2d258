#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scsf/flow.hpp"
#include "scsf/singularity.hpp"

// Experiment configuration: a flat sectioned key-value file. Grammar:
//
//   [section]
//   key = value          # '#' starts a comment
//
// Sections and keys (defaults in parentheses):
//   [curve]     dim (from coordN keys), samples (4 * vertices),
//               coordN = freq cos sin [; freq cos sin ...]
//   [flow]      vertices (512), sigma (0.25), resample_every (25),
//               record_every (50), max_steps (100000),
//               length_floor_frac (0.05), curvature_cap_factor (200),
//               timestep_floor (1e-15), symmetrize (off)
//   [planes]    plane = <id> : n0 n1 ... : offset     (repeatable)
//   [monitors]  ratio (on), symmetric (on), symmetric_plane (first plane),
//               projection (on), diagnostics (on), symmetry_tol (1e-4)
//   [singularity] q_lo (0.1), q_hi (10), drift_ratio (3)
//   [output]    directory (out), snapshot_every (0), views (xy),
//               dump_points (off), quiet (off), seed (0)
//
// Unknown sections or keys are rejected with the offending line number.

namespace scsf {

struct PlaneSpec {
    std::string id;
    Hyperplane plane;
};

struct ExperimentConfig {
    FlowConfig flow;
    std::vector<PlaneSpec> planes;  // flow.planes mirrors these, same order
    std::string symmetric_plane_id;
    ClassifyParams classify;
    std::string out_dir = "out";
    std::size_t snapshot_every = 0;  // records between snapshots; 0 = off
    std::vector<std::pair<int, int>> views = {{0, 1}};
    bool dump_points = false;
    bool quiet = false;
    unsigned long long seed = 0;  // reserved, unused
    std::size_t synth_samples = 0;  // 0 = 4 * vertices
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Canonical echo of the parsed config (defaults filled in), byte-stable.
std::string config_echo(const ExperimentConfig& config);

}  // namespace scsf
