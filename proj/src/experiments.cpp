#include "gvns/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "gvns/norms.hpp"

namespace gvns {

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3) throw ValidationError("fit_scaling: need at least 3 (D, la) pairs");
    std::vector<double> x, y;
    for (const auto& [D, la] : pairs) {
        if (!(D > 0.0) || !(la > 0.0) || !std::isfinite(D) || !std::isfinite(la)) {
            throw ValidationError("fit_scaling: D and la must be positive and finite");
        }
        x.push_back(std::log(D));
        y.push_back(std::log(la));
    }
    const double m = double(x.size());
    const double xb = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double yb = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xb) * (x[i] - xb);
        sxy += (x[i] - xb) * (y[i] - yb);
    }
    if (!(sxx > 1e-24 * std::max(1.0, xb * xb))) throw ValidationError("fit_scaling: all D values are equal");
    ScalingFit f;
    f.exponent = sxy / sxx;
    f.intercept = yb - f.exponent * xb;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.exponent * x[i];
        ss += r * r;
    }
    f.stderr_ = std::sqrt(ss / (m - 2.0) / sxx);
    return f;
}

namespace {

SweepRow run_row(const SweepConfig& cfg, double nu, int n_planned, std::vector<DiagnosticsRecord>& records) {
    SweepRow row;
    row.nu = nu;
    row.n_planned = n_planned;

    SimConfig c = cfg.base;
    c.params.nu = nu;
    c.grid = GridSpec(n_planned, cfg.base.grid.length());
    const double spin = c.spinup_time();
    c.spinup = spin;

    const Dimensionless d = dimensionless(c.params, c.forcing, c.grid, c.sigma1);
    const BoundsReport b = damped_bounds(d, c.grid.area(), c.sigma1, cfg.constants);
    row.D = d.D;
    row.la_thm32 = b.la_thm32;
    row.la_thm21 = b.la_thm21;
    row.l_dn_damped = b.l_dn_damped;

    std::optional<State> start;
    if (spin < c.t_end) {
        SimConfig warm = c;
        warm.t_end = spin;
        RunResult w = run(warm);
        if (w.blowup) {
            row.blowup = true;
            row.message = w.message;
            row.n_used = n_planned;
            records = std::move(w.records);
            return row;
        }
        start = std::move(w.final_state);
    }

    int n = n_planned;
    for (;;) {
        RunHooks hooks;
        if (start) hooks.start = *start;
        RunResult r = run(c, hooks);
        row.n_used = n;
        row.summary = r.summary;
        row.blowup = r.blowup;
        row.message = r.message;
        records = std::move(r.records);
        if (r.blowup || r.summary.resolved || !cfg.refine || !start || 2 * n > cfg.max_n) break;
        n *= 2;
        c.grid = GridSpec(n, cfg.base.grid.length());
        start->omega = resample(start->omega, c.grid);
    }
    row.resolved = !row.blowup && row.summary.resolved;
    row.measured_la = row.summary.median_la;
    return row;
}

}  // namespace

void fit_sweep(SweepResult& result) {
    std::vector<std::pair<double, double>> pairs;
    for (const SweepRow& r : result.rows) {
        if (r.resolved && r.measured_la) pairs.emplace_back(r.D, *r.measured_la);
    }
    result.fitted_exponent.reset();
    result.exponent_stderr.reset();
    if (pairs.size() < 3) return;
    const ScalingFit f = fit_scaling(pairs);
    result.fitted_exponent = f.exponent;
    result.exponent_stderr = f.stderr_;
}

SweepResult run_sweep(const SweepConfig& cfg, const RowCallback& on_row) {
    if (cfg.nu_values.size() < 3) throw ValidationError("run_sweep: need at least 3 viscosities");
    if (!cfg.n_values.empty() && cfg.n_values.size() != cfg.nu_values.size()) {
        throw ValidationError("run_sweep: n_values must match nu_values in length");
    }
    for (std::size_t i = 0; i < cfg.nu_values.size(); ++i) {
        if (!(cfg.nu_values[i] > 0.0)) throw ValidationError("run_sweep: viscosities must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (cfg.nu_values[i] == cfg.nu_values[j]) throw ValidationError("run_sweep: viscosities must be distinct");
        }
    }

    std::vector<std::size_t> order(cfg.nu_values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.nu_values[a] > cfg.nu_values[b]; });

    const std::size_t rows = order.size();
    SweepResult result;
    result.rows.resize(rows);
    result.records.resize(rows);
    std::vector<std::exception_ptr> errors(rows);
    std::atomic<std::size_t> next{0};
    std::mutex callback_mutex;

    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < rows;) {
            const std::size_t src = order[i];
            const int n = cfg.n_values.empty() ? cfg.base.grid.n() : cfg.n_values[src];
            try {
                result.rows[i] = run_row(cfg, cfg.nu_values[src], n, result.records[i]);
                if (on_row) {
                    std::lock_guard lock(callback_mutex);
                    on_row(i, result.rows[i]);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int jobs = std::clamp(cfg.jobs, 1, int(rows));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    fit_sweep(result);
    const bool any_resolved = std::any_of(result.rows.begin(), result.rows.end(),
                                          [](const SweepRow& r) { return r.resolved; });
    if (!any_resolved) {
        std::string msg = "run_sweep: no row is resolved;";
        for (const SweepRow& r : result.rows) {
            msg += " nu=" + std::to_string(r.nu) + (r.blowup ? " blowup" : " unresolved");
        }
        throw SweepError(msg, std::move(result));
    }
    return result;
}

BoundsComparison compare_bounds(const SweepResult& sweep, double spread_factor) {
    BoundsComparison c;
    c.spread_factor = spread_factor;
    for (const SweepRow& r : sweep.rows) {
        if (!r.resolved || !r.measured_la) continue;
        BoundsComparison::Row row;
        row.nu = r.nu;
        row.D = r.D;
        row.measured_la = *r.measured_la;
        row.ratio_thm32 = row.measured_la / r.la_thm32;
        row.ratio_dn = row.measured_la / r.l_dn_damped;
        row.compensated = row.measured_la * std::sqrt(r.D) * std::sqrt(1.0 + std::log(r.D));
        c.rows.push_back(row);
    }
    if (c.rows.size() < 2) throw ValidationError("compare_bounds: need at least 2 resolved rows");
    c.compensated_min = c.compensated_max = c.rows.front().compensated;
    c.violation_factor = 0.0;
    for (const auto& row : c.rows) {
        c.compensated_min = std::min(c.compensated_min, row.compensated);
        c.compensated_max = std::max(c.compensated_max, row.compensated);
        c.violation_factor = std::max(c.violation_factor, 1.0 / row.ratio_thm32);
    }
    c.spread = c.compensated_max / c.compensated_min;
    c.spread_flag = c.spread > spread_factor;
    c.violated = c.violation_factor > 1.0;
    return c;
}

long count_modes(const GridSpec& grid, int kappa) {
    const int K = grid.dealias_cutoff();
    long count = 0;
    for (int j1 = -K; j1 <= K; ++j1) {
        for (int j2 = -K; j2 <= K; ++j2) {
            if ((j1 || j2) && j1 * j1 + j2 * j2 <= kappa * kappa) ++count;
        }
    }
    return count;
}

void overwrite_low_modes(SpectralField& dst, const SpectralField& src, int kappa) {
    const GridSpec& g = dst.grid();
    const long k2 = long(kappa) * kappa;
    for (int r = 0; r < g.n(); ++r) {
        const long j1 = g.row_index(r);
        for (int c = 0; c < g.half_cols(); ++c) {
            if (j1 * j1 + long(c) * c > k2) break;
            dst.at(r, c) = src.at(r, c);
        }
    }
}

namespace {

double relative_error(const SpectralField& master, const SpectralField& slave) {
    const double ref = std::sqrt(inner(master, master));
    SpectralField diff = master - slave;
    const double e = std::sqrt(inner(diff, diff));
    return ref > 0.0 ? e / ref : e;
}

std::optional<double> fit_decay(const std::vector<std::pair<double, double>>& series) {
    std::vector<double> x, y;
    for (const auto& [t, e] : series) {
        if (e > 0.0 && std::isfinite(e)) {
            x.push_back(t);
            y.push_back(std::log(e));
        }
    }
    if (x.size() < 3) return std::nullopt;
    const double m = double(x.size());
    const double xb = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double yb = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xb) * (x[i] - xb);
        sxy += (x[i] - xb) * (y[i] - yb);
    }
    if (!(sxx > 0.0)) return std::nullopt;
    return -sxy / sxx;
}

}  // namespace

SyncReport determining_modes(const SyncConfig& cfg) {
    cfg.sim.validate();
    if (cfg.kappas.empty()) throw ValidationError("determining_modes: no coupling cutoffs given");
    if (!(cfg.threshold > 0.0)) throw ValidationError("determining_modes: threshold must be positive");
    if (cfg.record_every < 1) throw ValidationError("determining_modes: record_every must be >= 1");
    const GridSpec& grid = cfg.sim.grid;
    const int kmax = int(std::ceil(std::sqrt(2.0) * grid.dealias_cutoff()));
    std::vector<int> kappas = cfg.kappas;
    std::sort(kappas.begin(), kappas.end());
    kappas.erase(std::unique(kappas.begin(), kappas.end()), kappas.end());
    for (int k : kappas) {
        if (k < 0 || k > kmax) {
            throw ValidationError("determining_modes: kappa " + std::to_string(k) + " outside [0, " +
                                  std::to_string(kmax) + "]");
        }
    }

    const SpectralField forcing = build_forcing(cfg.sim.forcing, grid);
    Stepper stepper(grid, cfg.sim.params, forcing);
    State master = cfg.master_start ? *cfg.master_start : State{0.0, initial_vorticity(cfg.sim.initial, grid)};
    if (!(master.omega.grid() == grid)) throw ValidationError("determining_modes: master grid differs from config");

    SyncReport report;
    report.t_start = master.t;
    const Dimensionless d = dimensionless(cfg.sim.params, cfg.sim.forcing, grid, cfg.sim.sigma1);
    report.D = d.D;
    report.n_pred = d.D / std::sqrt(68.0);
    report.n_dim = 12.0 * d.D;

    const double horizon = cfg.horizon ? *cfg.horizon : 20.0 / cfg.sim.params.mu;
    const double t_end = master.t + horizon;

    struct Slave {
        State state;
        SyncResult result;
        bool active = true;
    };
    std::vector<Slave> slaves;
    for (int k : kappas) {
        Slave s;
        s.state = master;
        const long k2 = long(k) * k;
        for (int r = 0; r < grid.n(); ++r) {
            const long j1 = grid.row_index(r);
            for (int c = 0; c < grid.half_cols(); ++c) {
                if (j1 * j1 + long(c) * c > k2) s.state.omega.at(r, c) = 0.0;
            }
        }
        s.state.omega.set_mode(1, 0, s.state.omega.coeff(1, 0) * std::polar(1.0, cfg.phase_shift));
        s.result.kappa_c = k;
        s.result.n_det = count_modes(grid, k);
        s.result.error.emplace_back(0.0, relative_error(master.omega, s.state.omega));
        slaves.push_back(std::move(s));
    }

    double dt = cfg.sim.dt ? *cfg.sim.dt : stepper.cfl_dt(stepper.max_speed(master.omega));
    const double eps = 1e-12 * std::max(1.0, t_end);
    long steps = 0;
    while (master.t < t_end - eps) {
        const bool any_active = std::any_of(slaves.begin(), slaves.end(), [](const Slave& s) { return s.active; });
        if (!any_active) break;
        const double h = std::min(dt, t_end - master.t);
        stepper.step(master, h);
        double umax = stepper.last_umax();
        ++steps;
        const bool last = master.t >= t_end - eps;
        for (Slave& s : slaves) {
            if (!s.active) continue;
            stepper.step(s.state, h);
            umax = std::max(umax, stepper.last_umax());
            s.state.t = master.t;
            overwrite_low_modes(s.state.omega, master.omega, s.result.kappa_c);
            const double e = relative_error(master.omega, s.state.omega);
            const double rel_t = master.t - report.t_start;
            if (e < cfg.threshold) {
                s.result.synchronized = true;
                s.result.sync_time = rel_t;
                s.result.error.emplace_back(rel_t, e);
                s.active = false;
            } else if (steps % cfg.record_every == 0 || last) {
                s.result.error.emplace_back(rel_t, e);
            }
        }
        if (!cfg.sim.dt && steps % 10 == 0) dt = stepper.cfl_dt(umax);
    }

    for (Slave& s : slaves) {
        s.result.decay_rate = fit_decay(s.result.error);
        report.results.push_back(std::move(s.result));
    }
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const SyncResult& r = report.results[i];
        if (!r.synchronized) continue;
        if (!report.min_sufficient_n_det || r.n_det < *report.min_sufficient_n_det) report.min_sufficient_n_det = r.n_det;
        for (std::size_t j = i + 1; j < report.results.size(); ++j) {
            if (!report.results[j].synchronized) {
                report.monotonicity_findings.push_back(r.kappa_c);
                break;
            }
        }
    }
    return report;
}

nlohmann::json to_json(const RunSummary& s) {
    nlohmann::json j;
    j["median_la"] = s.median_la ? nlohmann::json(*s.median_la) : nlohmann::json(nullptr);
    j["post_spinup_samples"] = s.post_spinup_samples;
    j["accepted_samples"] = s.accepted_samples;
    j["median_resolution_ratio"] = s.median_resolution_ratio;
    j["max_resolution_ratio"] = s.max_resolution_ratio;
    j["resolved"] = s.resolved;
    j["radius_within_half_period"] = s.radius_within_half_period;
    j["linf_bound_holds"] = s.linf_bound_holds;
    j["max_linf_ratio"] = s.max_linf_ratio;
    return j;
}

nlohmann::json to_json(const SweepRow& r) {
    nlohmann::json j;
    j["nu"] = r.nu;
    j["D"] = r.D;
    j["measured_la"] = r.measured_la ? nlohmann::json(*r.measured_la) : nlohmann::json(nullptr);
    j["la_thm32"] = r.la_thm32;
    j["la_thm21"] = r.la_thm21;
    j["l_dn_damped"] = r.l_dn_damped;
    j["resolved"] = r.resolved;
    j["n_planned"] = r.n_planned;
    j["n_used"] = r.n_used;
    j["blowup"] = r.blowup;
    if (!r.message.empty()) j["message"] = r.message;
    j["summary"] = to_json(r.summary);
    return j;
}

nlohmann::json to_json(const SweepResult& r) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) j["rows"].push_back(to_json(row));
    j["fitted_exponent"] = r.fitted_exponent ? nlohmann::json(*r.fitted_exponent) : nlohmann::json(nullptr);
    j["exponent_stderr"] = r.exponent_stderr ? nlohmann::json(*r.exponent_stderr) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const BoundsComparison& c) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : c.rows) {
        j["rows"].push_back({{"nu", r.nu},
                             {"D", r.D},
                             {"measured_la", r.measured_la},
                             {"ratio_thm32", r.ratio_thm32},
                             {"ratio_dn", r.ratio_dn},
                             {"compensated", r.compensated}});
    }
    j["compensated_min"] = c.compensated_min;
    j["compensated_max"] = c.compensated_max;
    j["spread"] = c.spread;
    j["spread_factor"] = c.spread_factor;
    j["spread_flag"] = c.spread_flag;
    j["violation_factor"] = c.violation_factor;
    j["violated"] = c.violated;
    return j;
}

nlohmann::json to_json(const SyncResult& r, bool with_series) {
    nlohmann::json j;
    j["kappa_c"] = r.kappa_c;
    j["n_det"] = r.n_det;
    j["synchronized"] = r.synchronized;
    j["sync_time"] = r.sync_time ? nlohmann::json(*r.sync_time) : nlohmann::json(nullptr);
    j["decay_rate"] = r.decay_rate ? nlohmann::json(*r.decay_rate) : nlohmann::json(nullptr);
    j["final_error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error.back().second);
    if (with_series) {
        j["error"] = nlohmann::json::array();
        for (const auto& [t, e] : r.error) j["error"].push_back({t, e});
    }
    return j;
}

nlohmann::json to_json(const SyncReport& r, bool with_series) {
    nlohmann::json j;
    j["D"] = r.D;
    j["n_pred"] = r.n_pred;
    j["n_dim"] = r.n_dim;
    j["t_start"] = r.t_start;
    j["min_sufficient_n_det"] = r.min_sufficient_n_det ? nlohmann::json(*r.min_sufficient_n_det) : nlohmann::json(nullptr);
    j["monotonicity_findings"] = r.monotonicity_findings;
    j["results"] = nlohmann::json::array();
    for (const auto& s : r.results) j["results"].push_back(to_json(s, with_series));
    return j;
}

}  // namespace gvns
