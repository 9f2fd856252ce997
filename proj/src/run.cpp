#include "gvns/run.hpp"

#include <algorithm>
#include <cmath>

#include "gvns/errors.hpp"

namespace gvns {
namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

RunSummary summarize(const std::vector<DiagnosticsRecord>& records, double spinup, const GridSpec& grid,
                     double forcing_linf, double mu) {
    RunSummary s;
    std::vector<double> radii, ratios;
    for (const DiagnosticsRecord& r : records) {
        if (r.t < spinup) continue;
        ++s.post_spinup_samples;
        ratios.push_back(r.resolution_ratio);
        if (r.radius && r.radius->accepted) radii.push_back(r.radius->l_a);
        if (mu > 0.0 && forcing_linf > 0.0) {
            const double ratio = r.lp.linf * mu / forcing_linf;
            s.max_linf_ratio = std::max(s.max_linf_ratio, ratio);
            if (ratio > 1.0 + 1e-3) s.linf_bound_holds = false;
        }
    }
    s.accepted_samples = int(radii.size());
    if (!radii.empty()) {
        s.median_la = median(radii);
        s.radius_within_half_period = *s.median_la <= 0.5 * grid.length();
    }
    if (!ratios.empty()) {
        s.median_resolution_ratio = median(ratios);
        s.max_resolution_ratio = *std::max_element(ratios.begin(), ratios.end());
        s.resolved = s.median_resolution_ratio <= resolution_threshold;
    }
    return s;
}

RunResult run(const SimConfig& config, const RunHooks& hooks) {
    config.validate();
    const GridSpec& grid = config.grid;
    const SpectralField forcing = build_forcing(config.forcing, grid);
    Stepper stepper(grid, config.params, forcing);

    RunResult result;
    State state = hooks.start ? *hooks.start : State{0.0, initial_vorticity(config.initial, grid)};
    if (!(state.omega.grid() == grid)) throw ValidationError("run: start state grid differs from config grid");
    state.omega.zero_mean();
    state.omega.dealias();

    auto sample = [&] {
        DiagnosticsRecord rec = record(state, config.params, forcing, config.sigma1);
        if (hooks.on_record) hooks.on_record(rec);
        result.records.push_back(std::move(rec));
    };

    double dt = config.dt ? *config.dt : stepper.cfl_dt(stepper.max_speed(state.omega));
    long steps = 0;
    sample();
    const double eps = 1e-12 * std::max(1.0, config.t_end);
    while (state.t < config.t_end - eps) {
        const double h = std::min(dt, config.t_end - state.t);
        try {
            stepper.step(state, h);
        } catch (const BlowupError& e) {
            result.blowup = true;
            result.blowup_time = e.last_valid_time();
            result.message = e.what();
            break;
        }
        ++steps;
        if (!config.dt && steps % 10 == 0) dt = stepper.cfl_dt(stepper.last_umax());
        const bool last = state.t >= config.t_end - eps;
        if (steps % config.sample_every == 0 || last) sample();
        if (config.checkpoint_every > 0 && hooks.on_checkpoint && (steps % config.checkpoint_every == 0 || last)) {
            hooks.on_checkpoint(state, steps);
        }
    }
    result.steps = steps;
    result.final_state = std::move(state);
    const double f_inf = norm(forcing, NormSpec::Linf());
    result.summary = summarize(result.records, config.spinup_time(), grid, f_inf, config.params.mu);
    return result;
}

}  // namespace gvns
