#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "gvns/norms.hpp"
#include "gvns/solver.hpp"

namespace gvns {

/// Exponential decay fit ln S(kappa) = intercept - (2 pi / L) l_a kappa.
struct RadiusEstimate {
    double l_a = 0.0;        // length units
    double intercept = 0.0;
    double r2 = 0.0;
    int kappa_lo = 0;
    int kappa_hi = 0;
    int shells = 0;          // shells used in the fit
    bool accepted = false;
};

struct RadiusOptions {
    double length = two_pi;
    int cutoff = 0;               // 0: largest kappa in the spectrum
    double lo_fraction = 1e-2;    // window starts once S <= lo_fraction * max
    double floor_fraction = 1e-13;
    double min_r2 = 0.98;
    int min_shells = 5;
};

/// Unweighted least squares of ln S against kappa over the window
/// [first kappa with S <= lo_fraction max S, last kappa with
/// S >= floor_fraction max S and kappa <= cutoff - 2]. Never throws;
/// poor windows or fits come back with accepted = false.
RadiusEstimate estimate_radius(const std::vector<ShellValue>& spectrum, const RadiusOptions& opts = {});

struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;      // |u|^2 / 2
    double enstrophy = 0.0;   // |omega|^2 / 2
    PhysicalNorms lp;
    std::optional<double> gevrey_half;   // |A^{1/2} u|_phi
    std::optional<RadiusEstimate> radius;
    double budget_residual = 0.0;
    // energy budget terms: dE/dt = injection - dissipation - damping
    double dissipation = 0.0;  // nu |omega|^2
    double damping = 0.0;      // mu |u|^2
    double injection = 0.0;    // <f, u>
    double resolution_ratio = 0.0;  // S(cutoff) / max S
};

/// phi(t) = min(nu lambda1^{1/2} t, sigma1).
double gevrey_phi(double t, const PhysParams& params, const GridSpec& grid, double sigma1);

/// Snapshot diagnostics. `budget_residual` is the energy-budget defect of
/// the semi-discrete system, <psi, u . grad omega>, relative to the sum of
/// the budget terms' magnitudes. A Gevrey overflow leaves gevrey_half empty.
DiagnosticsRecord record(const State& state, const PhysParams& params, const SpectralField& forcing,
                         double sigma1, double t_origin = 0.0);

struct GevreyEnvelope {
    std::vector<std::pair<double, double>> series;  // (t - restart, |A^{1/2} u|_phi)
    std::optional<double> overflow_time;
};

/// Tracks the phi(t)-weighted norm of a sequence of states, with phi
/// measured from `restart`. Stops at the first overflow.
GevreyEnvelope gevrey_envelope(const std::vector<State>& states, const PhysParams& params, double sigma1,
                               double restart);

enum class LpIndex { l2, l4, l8, linf };
double lp_value(const PhysicalNorms& n, LpIndex p);
double forcing_lp(const SpectralField& forcing, LpIndex p);

struct VorticityBoundCheck {
    std::vector<double> t;
    std::vector<double> margin;
    double tolerance = 0.0;   // violations are margin < -tolerance
    double worst = std::numeric_limits<double>::infinity();
    int violations = 0;
    bool ok() const noexcept { return violations == 0; }
};

/// margin(t) = |omega(t0)| e^{-mu s} + |F| (1 - e^{-mu s}) / mu - |omega(t)|
/// with s = t - t0 and t0 the first sample. Tolerance 1e-6 |F| / mu.
VorticityBoundCheck check_vorticity_bound(const std::vector<DiagnosticsRecord>& series,
                                          const SpectralField& forcing, double mu, LpIndex p);

/// Centered-difference energy budget residuals |dE/dt - (inj - diss - damp)|
/// at interior samples, relative to the largest budget term.
std::vector<double> centered_budget_residuals(const std::vector<DiagnosticsRecord>& series);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& r);

}  // namespace gvns
