#include "gvns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gvns/errors.hpp"
#include "gvns/spectral.hpp"

namespace gvns {

RadiusEstimate estimate_radius(const std::vector<ShellValue>& spectrum, const RadiusOptions& opts) {
    RadiusEstimate est;
    double peak = 0.0;
    int last = 0;
    for (const ShellValue& s : spectrum) {
        if (std::isfinite(s.value)) peak = std::max(peak, s.value);
        last = std::max(last, s.kappa);
    }
    if (!(peak > 0.0)) return est;
    const int cutoff = opts.cutoff > 0 ? opts.cutoff : last;

    int lo = 0, hi = 0;
    for (const ShellValue& s : spectrum) {
        if (s.value > 0.0 && s.value <= opts.lo_fraction * peak) {
            lo = s.kappa;
            break;
        }
    }
    for (const ShellValue& s : spectrum) {
        if (s.kappa <= cutoff - 2 && s.value >= opts.floor_fraction * peak) hi = std::max(hi, s.kappa);
    }
    est.kappa_lo = lo;
    est.kappa_hi = hi;
    if (lo == 0 || hi <= lo) return est;

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int count = 0;
    for (const ShellValue& s : spectrum) {
        if (s.kappa < lo || s.kappa > hi || !(s.value > 0.0)) continue;
        const double x = s.kappa;
        const double y = std::log(s.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++count;
    }
    est.shells = count;
    if (count < 2) return est;
    const double mx = sx / count;
    const double my = sy / count;
    const double cxx = sxx - count * mx * mx;
    const double cxy = sxy - count * mx * my;
    const double cyy = syy - count * my * my;
    if (!(cxx > 0.0)) return est;
    const double slope = cxy / cxx;
    est.intercept = my - slope * mx;
    est.r2 = cyy > 0.0 ? std::clamp(cxy * cxy / (cxx * cyy), 0.0, 1.0) : 1.0;
    est.l_a = -slope * opts.length / two_pi;
    est.accepted = count >= opts.min_shells && est.r2 >= opts.min_r2 && est.l_a > 0.0;
    return est;
}

double gevrey_phi(double t, const PhysParams& params, const GridSpec& grid, double sigma1) {
    return std::min(params.nu * std::sqrt(grid.lambda1()) * std::max(t, 0.0), sigma1);
}

DiagnosticsRecord record(const State& state, const PhysParams& params, const SpectralField& forcing,
                         double sigma1, double t_origin) {
    const SpectralField& omega = state.omega;
    const GridSpec& g = omega.grid();
    DiagnosticsRecord rec;
    rec.t = state.t;

    const SpectralField psi = stream_function(omega);
    const double omega_sq = inner(omega, omega);
    const double u_sq = -inner(omega, psi);
    rec.energy = 0.5 * u_sq;
    rec.enstrophy = 0.5 * omega_sq;
    rec.lp = physical_norms(omega);

    try {
        const double phi = gevrey_phi(state.t - t_origin, params, g, sigma1);
        rec.gevrey_half = norm(omega, NormSpec::Gevrey(phi, 0.5, 0.0));
    } catch (const OverflowError&) {
        rec.gevrey_half.reset();
    }

    const auto spectrum = shell_spectrum(omega);
    double peak = 0.0;
    for (const ShellValue& s : spectrum) peak = std::max(peak, s.value);
    rec.resolution_ratio = peak > 0.0 ? spectrum.back().value / peak : 0.0;
    if (peak > 0.0) {
        RadiusOptions opts;
        opts.length = g.length();
        opts.cutoff = g.dealias_cutoff();
        rec.radius = estimate_radius(spectrum, opts);
    }

    rec.dissipation = params.nu * omega_sq;
    rec.damping = params.mu * u_sq;
    rec.injection = -inner(forcing, psi);
    const double scale = rec.dissipation + rec.damping + std::abs(rec.injection);
    if (scale > 0.0 && omega.is_dealiased()) {
        rec.budget_residual = std::abs(inner(advect(omega), psi)) / scale;
    }
    return rec;
}

GevreyEnvelope gevrey_envelope(const std::vector<State>& states, const PhysParams& params, double sigma1,
                               double restart) {
    GevreyEnvelope env;
    for (const State& s : states) {
        const double t = s.t - restart;
        try {
            const double phi = gevrey_phi(t, params, s.omega.grid(), sigma1);
            env.series.emplace_back(t, norm(s.omega, NormSpec::Gevrey(phi, 0.5, 0.0)));
        } catch (const OverflowError&) {
            env.overflow_time = t;
            break;
        }
    }
    return env;
}

double lp_value(const PhysicalNorms& n, LpIndex p) {
    switch (p) {
        case LpIndex::l2: return n.l2;
        case LpIndex::l4: return n.l4;
        case LpIndex::l8: return n.l8;
        case LpIndex::linf: return n.linf;
    }
    return 0.0;
}

double forcing_lp(const SpectralField& forcing, LpIndex p) {
    switch (p) {
        case LpIndex::l2: return norm(forcing, NormSpec::L2());
        case LpIndex::l4: return norm(forcing, NormSpec::Lp(4));
        case LpIndex::l8: return norm(forcing, NormSpec::Lp(8));
        case LpIndex::linf: return norm(forcing, NormSpec::Linf());
    }
    return 0.0;
}

VorticityBoundCheck check_vorticity_bound(const std::vector<DiagnosticsRecord>& series,
                                          const SpectralField& forcing, double mu, LpIndex p) {
    if (!(mu > 0.0)) throw ValidationError("check_vorticity_bound: mu must be positive");
    VorticityBoundCheck out;
    const double f = forcing_lp(forcing, p);
    out.tolerance = 1e-6 * f / mu;
    if (series.empty()) return out;
    const double t0 = series.front().t;
    const double w0 = lp_value(series.front().lp, p);
    for (const DiagnosticsRecord& r : series) {
        const double decay = std::exp(-mu * (r.t - t0));
        const double bound = w0 * decay + f * (1.0 - decay) / mu;
        const double m = bound - lp_value(r.lp, p);
        out.t.push_back(r.t);
        out.margin.push_back(m);
        out.worst = std::min(out.worst, m);
        if (m < -out.tolerance) ++out.violations;
    }
    return out;
}

std::vector<double> centered_budget_residuals(const std::vector<DiagnosticsRecord>& series) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const auto& a = series[i - 1];
        const auto& b = series[i];
        const auto& c = series[i + 1];
        // second-order derivative on a possibly nonuniform stencil
        const double h1 = b.t - a.t;
        const double h2 = c.t - b.t;
        const double dedt = (-h2 / (h1 * (h1 + h2))) * a.energy + ((h2 - h1) / (h1 * h2)) * b.energy +
                            (h1 / (h2 * (h1 + h2))) * c.energy;
        const double budget = b.injection - b.dissipation - b.damping;
        const double scale = std::max({b.dissipation, b.damping, std::abs(b.injection)});
        out.push_back(scale > 0.0 ? std::abs(dedt - budget) / scale : std::abs(dedt - budget));
    }
    return out;
}

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_csv_header(std::ostream& out) {
    out << "t,energy,enstrophy,l2,l4,l8,linf,gevrey_half,la,r2,accepted,budget_residual\n";
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
    put(out, r.t);
    for (double v : {r.energy, r.enstrophy, r.lp.l2, r.lp.l4, r.lp.l8, r.lp.linf}) {
        out << ',';
        put(out, v);
    }
    out << ',';
    if (r.gevrey_half) put(out, *r.gevrey_half);
    out << ',';
    if (r.radius) put(out, r.radius->l_a);
    out << ',';
    if (r.radius) put(out, r.radius->r2);
    out << ',' << (r.radius && r.radius->accepted ? 1 : 0) << ',';
    put(out, r.budget_residual);
    out << '\n';
}

}  // namespace gvns
