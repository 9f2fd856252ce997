#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvns/bounds.hpp"
#include "gvns/experiments.hpp"
#include "gvns/solver.hpp"

namespace gvns {

/// Settings parsed from a config file. Format: `[section]` headers and
/// `key = value` lines, or dotted `section.key = value` at top level.
/// `#` starts a comment. Lists are whitespace or comma separated; forcing
/// modes are `k1 k2 amplitude [phase]` groups separated by `;`.
///
///   grid.n (required)        grid.length = 2 pi
///   params.nu (required)     params.mu (required)
///   forcing.modes (required)
///   run.t_end (required)     run.dt = auto        run.spinup = auto
///   run.sample_every = 10    run.checkpoint_every = 0
///   run.sigma1 = 1           run.seed = 0
///   initial.kind = random    (zero | single | random)
///   initial.amplitude = 1    initial.slope = 2    initial.k = 1 0
///   sweep.nu                 sweep.n              sweep.refine = true
///   sweep.max_n = 1024       sweep.spread_factor = 3
///   sync.kappas              sync.horizon = auto  sync.threshold = 1e-6
///   sync.record_every = 10   sync.start = (checkpoint path)
///   bounds.c bounds.C bounds.c1 bounds.c2 bounds.c3 bounds.c4 bounds.c5
///   bounds.c7 bounds.c8
struct Config {
    SimConfig sim;
    std::uint64_t seed = 0;
    std::vector<double> sweep_nu;
    std::vector<int> sweep_n;
    bool sweep_refine = true;
    int sweep_max_n = 1024;
    double spread_factor = 3.0;
    std::vector<int> sync_kappas;
    std::optional<double> sync_horizon;
    double sync_threshold = 1e-6;
    int sync_record_every = 10;
    std::string sync_start;
    BoundsConstants constants;

    /// Replaces the seed everywhere it is used.
    void set_seed(std::uint64_t s);
    bool is_sweep() const noexcept { return !sweep_nu.empty(); }
    SweepConfig sweep_config(int jobs = 1) const;
    SyncConfig sync_config() const;
    /// Every key with its resolved value, one per line in a fixed order.
    std::string echo() const;
};

/// Throws ConfigError naming the key and line for unknown keys, duplicate
/// keys, malformed values and (with line 0) missing required keys.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace gvns
