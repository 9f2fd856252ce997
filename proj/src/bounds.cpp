#include "gvns/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"

namespace gvns {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string("bounds: ") + what + " must be positive and finite");
}

}  // namespace

double BoundsConstants::node_c2() const { return c2 > 0.0 ? c2 : std::sqrt(68.0 / M_PI); }
double BoundsConstants::node_c5() const { return c5 > 0.0 ? c5 : std::pow(68.0, 0.25); }

std::map<std::string, double> BoundsConstants::echo() const {
    return {{"c", c},   {"C", C},   {"c1", c1}, {"c2", node_c2()}, {"c3", c3},
            {"c4", c4}, {"c5", node_c5()}, {"c7", c7}, {"c8", c8}};
}

double clamped_log(double x) { return std::log(std::max(x, std::exp(1.0))); }

Dimensionless dimensionless(const PhysParams& params, const ForcingSpec& forcing, const GridSpec& grid,
                            double sigma1) {
    params.validate(true);
    require_positive(sigma1, "sigma1");
    const SpectralField F = build_forcing(forcing, grid);
    if (F.max_abs() == 0.0) throw ValidationError("bounds: forcing is identically zero");

    // f = grad-perp inverse-Laplacian F, so |f_k| = |F_k| / |k|.
    const double kunit = grid.k_unit();
    const int n = grid.n();
    double f_sq = 0.0;
    for (int r = 0; r < n; ++r) {
        const int j1 = grid.row_index(r);
        for (int c = 0; c < grid.half_cols(); ++c) {
            const double a = std::norm(F.at(r, c));
            if (a == 0.0) continue;
            const double w = (c == 0 || c == n / 2) ? 1.0 : 2.0;
            const double k_sq = kunit * kunit * (double(j1) * j1 + double(c) * c);
            f_sq += w * a / k_sq;
        }
    }
    const double f_l2 = std::sqrt(grid.area() * f_sq);
    const double rot_f_inf = norm(F, NormSpec::Linf());
    const double af_sigma = norm(F, NormSpec::Gevrey(sigma1, 0.5, 0.0));
    const double nu = params.nu, mu = params.mu;

    Dimensionless d;
    d.G = f_l2 * grid.area() / (nu * nu);
    d.D = rot_f_inf * grid.area() / (mu * nu);
    d.D1 = af_sigma / (grid.lambda1() * std::pow(nu, 1.5) * std::sqrt(mu));
    return d;
}

double la_thm32(double D, double area, double C) {
    return std::sqrt(area) / (C * std::sqrt(D) * std::sqrt(1.0 + clamped_log(D)));
}

void damped_bounds(BoundsReport& r, const Dimensionless& d, double area, double sigma1, const BoundsConstants& k) {
    require_positive(d.D, "D");
    require_positive(area, "area");
    require_positive(sigma1, "sigma1");
    if (d.D <= 1.0) r.warnings.push_back("D <= 1: outside the logarithmic regime, logs clamped at e");
    const double sa = std::sqrt(area);
    r.dim_damped = k.c4 * d.D;
    r.l_f_damped = std::sqrt(area / d.D);
    r.l_dn_damped = k.node_c5() * std::sqrt(area / d.D);
    const double q = d.D * d.D + d.D1 + 1.0;
    r.la_thm21 = std::min(k.c7 * sa / (q * clamped_log(q)), sigma1);
    r.la_gevrey_asymptotic = k.c8 * sa / (d.D * d.D * clamped_log(d.D));
    r.la_thm32 = la_thm32(d.D, area, k.C);
    r.constants = k.echo();
}

BoundsReport damped_bounds(const Dimensionless& d, double area, double sigma1, const BoundsConstants& k) {
    BoundsReport r;
    damped_bounds(r, d, area, sigma1, k);
    return r;
}

void classical_bounds(BoundsReport& r, const Dimensionless& g, double area, const BoundsConstants& k) {
    require_positive(g.G, "G");
    require_positive(area, "area");
    if (g.G <= 1.0) r.warnings.push_back("G <= 1: outside the logarithmic regime, logs clamped at e");
    const double sa = std::sqrt(area);
    r.la_ft = k.c * sa / (g.G * g.G * clamped_log(g.G));
    r.la_kukavica = k.c3 * sa / (std::sqrt(g.G) * std::pow(1.0 + clamped_log(g.G), 0.25));
    r.l_nodes_ns = sa / (std::sqrt(k.node_c2()) * std::sqrt(g.G));
    r.dim_classical = k.c1 * std::pow(g.G, 2.0 / 3.0) * std::cbrt(std::log1p(g.G));
    r.constants = k.echo();
}

BoundsReport classical_bounds(const Dimensionless& g, double area, const BoundsConstants& k) {
    BoundsReport r;
    classical_bounds(r, g, area, k);
    return r;
}

BoundsReport all_bounds(const Dimensionless& d, double area, double sigma1, const BoundsConstants& k) {
    BoundsReport r;
    classical_bounds(r, d, area, k);
    damped_bounds(r, d, area, sigma1, k);
    return r;
}

StripBound strip_bound_mf(const ForcingSpec& forcing, double delta_F) {
    if (!(delta_F >= 0.0) || !std::isfinite(delta_F)) throw ValidationError("strip_bound_mf: delta_F must be >= 0");
    StripBound out;
    // |cos(z)|^2 = cos^2 x + sinh^2 y, maximized at cosh^2 y.
    for (const ForcingMode& m : forcing.modes) {
        const double kk = std::hypot(double(m.k[0]), double(m.k[1]));
        out.value += std::abs(m.amplitude) * std::cosh(kk * delta_F);
    }
    out.upper_bound = forcing.modes.size() > 1;
    return out;
}

std::vector<double> StripLemma::delta_terms(double t) const {
    if (!(t > 0.0)) throw ValidationError("strip lemma: t must be positive");
    const double pp = p;
    return {
        std::sqrt(t) / C,
        1.0 / (C * pp * std::pow(t, (2 * pp - 3) / (4 * pp)) * M2p),
        1.0 / (C * pp * std::pow(t, (2 * pp - 3) / (4 * pp + 6)) * std::pow(M2p, 2 * pp / (2 * pp + 3))),
        1.0 / (pp * std::sqrt(t) * M2p),
        delta_F,
    };
}

double StripLemma::delta(double t) const {
    const auto terms = delta_terms(t);
    return *std::min_element(terms.begin(), terms.end());
}

StripLemma kukavica_time_and_strip(double p, double M2p, double MF, double mu, double delta_F, double C) {
    if (!(p >= 1.5) || !std::isfinite(p)) throw ValidationError("kukavica_time_and_strip: p must be >= 3/2");
    require_positive(M2p, "M2p");
    require_positive(MF, "MF");
    require_positive(mu, "mu");
    require_positive(C, "C");
    if (!(delta_F >= 0.0)) throw ValidationError("kukavica_time_and_strip: delta_F must be >= 0");
    StripLemma s;
    s.p = p;
    s.M2p = M2p;
    s.MF = MF;
    s.mu = mu;
    s.delta_F = delta_F;
    s.C = C;
    s.t0 = mu * M2p * M2p / (C * MF * MF);
    return s;
}

double gronwall_time(const std::vector<GronwallTerm>& terms, double M, double N, double T) {
    require_positive(M, "M");
    require_positive(N, "N");
    if (!(T > 0.0)) throw ValidationError("gronwall_time: T must be positive");
    double best = T;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const GronwallTerm& g = terms[j];
        const std::string name = "gronwall_time: term " + std::to_string(j);
        if (!(g.K > 0.0) || !std::isfinite(g.K)) throw ValidationError(name + " needs K > 0");
        if (!(g.alpha > -1.0) || !std::isfinite(g.alpha)) throw ValidationError(name + " needs alpha > -1");
        if (!(g.gamma >= 0.0) || !std::isfinite(g.gamma)) throw ValidationError(name + " needs gamma >= 0");
        if (!std::isfinite(g.beta)) throw ValidationError(name + " needs finite beta");
        const double base = (g.alpha + 1.0) /
                            (N * g.K * std::pow(2.0, std::max(g.beta, 0.0) + g.gamma) *
                             std::pow(M, g.beta + g.gamma - 1.0));
        best = std::min(best, std::pow(base, 1.0 / (g.alpha + 1.0)));
    }
    return best;
}

double gevrey_existence_time(double a_half_u0, double a_half_f_sigma1, const PhysParams& params,
                             const GridSpec& grid, double c2, double c3) {
    params.validate(true);
    if (!(a_half_u0 >= 0.0) || !(a_half_f_sigma1 >= 0.0)) throw ValidationError("gevrey_existence_time: norms must be >= 0");
    const double nu = params.nu, mu = params.mu, l1 = grid.lambda1();
    const double y = c2 * a_half_u0 * a_half_u0 / (l1 * nu * nu) +
                     a_half_f_sigma1 / (l1 * std::pow(nu, 1.5) * std::sqrt(mu)) + std::exp(1.0);
    return 1.0 / (2.0 * c3 * nu * l1 * y * std::log(2.0 * y));
}

nlohmann::json to_json(const Dimensionless& d) { return {{"G", d.G}, {"D", d.D}, {"D1", d.D1}}; }

nlohmann::json to_json(const BoundsReport& r) {
    nlohmann::json j;
    j["la_ft"] = r.la_ft;
    j["la_kukavica"] = r.la_kukavica;
    j["l_nodes_ns"] = r.l_nodes_ns;
    j["dim_classical"] = r.dim_classical;
    j["dim_damped"] = r.dim_damped;
    j["l_f_damped"] = r.l_f_damped;
    j["l_dn_damped"] = r.l_dn_damped;
    j["la_thm21"] = r.la_thm21;
    j["la_gevrey_asymptotic"] = r.la_gevrey_asymptotic;
    j["la_thm32"] = r.la_thm32;
    j["constants"] = r.constants;
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace gvns
