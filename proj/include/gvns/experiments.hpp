#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gvns/bounds.hpp"
#include "gvns/errors.hpp"
#include "gvns/run.hpp"

namespace gvns {

struct SweepConfig {
    SimConfig base;
    std::vector<double> nu_values;       // decreasing
    std::vector<int> n_values;           // planned resolution per row; empty = base.grid.n
    /// A row whose measurement window is under-resolved is redone from the
    /// spin-up end state resampled to twice the resolution, up to max_n.
    bool refine = true;
    int max_n = 1024;
    BoundsConstants constants;
    int jobs = 1;
};

struct SweepRow {
    double nu = 0.0;
    double D = 0.0;
    std::optional<double> measured_la;
    double la_thm32 = 0.0;
    double la_thm21 = 0.0;
    double l_dn_damped = 0.0;
    bool resolved = false;
    int n_planned = 0;
    int n_used = 0;
    RunSummary summary;
    bool blowup = false;
    std::string message;
};

struct SweepResult {
    std::vector<SweepRow> rows;          // descending nu
    std::optional<double> fitted_exponent;
    std::optional<double> exponent_stderr;
    /// Per-row diagnostics of the final measurement window, same order.
    std::vector<std::vector<DiagnosticsRecord>> records;
};

struct ScalingFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
};

/// Least squares of ln la against ln D. Rejects fewer than three pairs,
/// non-positive values and degenerate D.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& pairs);

/// Raised when no sweep row is usable for the fit; carries the table.
class SweepError : public Error {
public:
    SweepError(const std::string& what, SweepResult result) : Error(what), result_(std::move(result)) {}
    const SweepResult& result() const noexcept { return result_; }
    const char* category() const noexcept override { return "sweep"; }

private:
    SweepResult result_;
};

/// Rows run concurrently on up to cfg.jobs threads; results do not depend on
/// the job count. Throws SweepError when every row is unresolved.
using RowCallback = std::function<void(std::size_t, const SweepRow&)>;
SweepResult run_sweep(const SweepConfig& cfg, const RowCallback& on_row = {});

/// Fills fitted_exponent from rows that are resolved with a measured radius.
void fit_sweep(SweepResult& result);

struct BoundsComparison {
    struct Row {
        double nu = 0.0;
        double D = 0.0;
        double measured_la = 0.0;
        double ratio_thm32 = 0.0;
        double ratio_dn = 0.0;
        double compensated = 0.0;   // la D^{1/2} (1 + ln D)^{1/2}
    };
    std::vector<Row> rows;
    double compensated_min = 0.0;
    double compensated_max = 0.0;
    double spread = 0.0;
    double spread_factor = 3.0;
    bool spread_flag = false;
    /// max over rows of la_thm32 / measured_la; above 1 means the bound is
    /// violated by that factor.
    double violation_factor = 0.0;
    bool violated = false;
};

/// Requires at least two resolved rows with a measured radius.
BoundsComparison compare_bounds(const SweepResult& sweep, double spread_factor = 3.0);

struct SyncConfig {
    SimConfig sim;                  // master configuration
    std::vector<int> kappas;        // coupling cutoffs, index units
    std::optional<double> horizon;  // default 20 / mu
    double threshold = 1e-6;
    int record_every = 10;
    /// Phase rotation applied to the slave's (1, 0) mode.
    double phase_shift = 1.5707963267948966;
    std::optional<State> master_start;
};

struct SyncResult {
    int kappa_c = 0;
    long n_det = 0;
    std::vector<std::pair<double, double>> error;   // (t - t_start, e)
    std::optional<double> decay_rate;
    bool synchronized = false;
    std::optional<double> sync_time;
};

struct SyncReport {
    std::vector<SyncResult> results;   // ascending kappa
    double D = 0.0;
    double n_pred = 0.0;               // D / sqrt(68)
    double n_dim = 0.0;                // 12 D
    std::optional<long> min_sufficient_n_det;
    std::vector<int> monotonicity_findings;   // kappas synced but a larger one did not
    double t_start = 0.0;
};

/// Retained lattice points 0 < |j| <= kappa within the dealiased square.
long count_modes(const GridSpec& grid, int kappa);

/// Copies modes |j| <= kappa from `src` into `dst`.
void overwrite_low_modes(SpectralField& dst, const SpectralField& src, int kappa);

/// Master and one slave per kappa advance in lock step; each slave's modes
/// with |j| <= kappa are replaced by the master's after every step. A slave
/// stops once its relative L2 error drops below the threshold.
SyncReport determining_modes(const SyncConfig& cfg);

nlohmann::json to_json(const SweepRow& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const BoundsComparison& c);
nlohmann::json to_json(const SyncResult& r, bool with_series = true);
nlohmann::json to_json(const SyncReport& r, bool with_series = true);
nlohmann::json to_json(const RunSummary& s);

}  // namespace gvns
