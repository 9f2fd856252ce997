#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gvns/diagnostics.hpp"
#include "gvns/solver.hpp"

namespace gvns {

/// Run-level statistics over samples with t >= spinup.
struct RunSummary {
    std::optional<double> median_la;   // median of accepted per-snapshot radii
    int post_spinup_samples = 0;
    int accepted_samples = 0;
    double median_resolution_ratio = 0.0;
    double max_resolution_ratio = 0.0;
    bool resolved = false;             // median ratio <= 1e-10
    bool radius_within_half_period = true;
    /// |omega|_inf <= |F|_inf / mu (1 + 1e-3) on every post-spinup sample
    bool linf_bound_holds = true;
    double max_linf_ratio = 0.0;       // max |omega|_inf mu / |F|_inf
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    State final_state;
    long steps = 0;
    bool blowup = false;
    double blowup_time = 0.0;
    std::string message;
    RunSummary summary;
};

struct RunHooks {
    /// Starting state; otherwise built from config.initial at t = 0.
    std::optional<State> start;
    std::function<void(const DiagnosticsRecord&)> on_record;
    std::function<void(const State&, long step)> on_checkpoint;
};

inline constexpr double resolution_threshold = 1e-10;

/// Integrates config.t_end, sampling diagnostics every `sample_every` steps
/// and at the final time. Blow-up does not throw: partial records are kept
/// and `blowup` is set. With automatic dt the step is re-evaluated every ten
/// steps from the collocation speed; the last step is shortened to land on
/// t_end.
RunResult run(const SimConfig& config, const RunHooks& hooks = {});

/// Recomputes the run-level summary for records with t >= spinup.
RunSummary summarize(const std::vector<DiagnosticsRecord>& records, double spinup, const GridSpec& grid,
                     double forcing_linf, double mu);

}  // namespace gvns
