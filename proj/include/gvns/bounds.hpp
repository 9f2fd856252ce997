#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gvns/solver.hpp"

namespace gvns {

struct Dimensionless {
    double G = 0.0;    // |f|_2 |Omega| / nu^2
    double D = 0.0;    // |rot f|_inf |Omega| / (mu nu)
    double D1 = 0.0;   // |A^{1/2} f|_{sigma1} / (lambda1 nu^{3/2} mu^{1/2})
};

/// Absolute constants. Anything without a known value defaults to 1.
struct BoundsConstants {
    double c = 1.0;     // Foias-Temam radius
    double C = 1.0;     // L-infinity route radius and strip lemma
    double c1 = 1.0;    // classical dimension
    double c2 = 0.0;    // determining nodes, N <= c2 G; 0 selects (68 / pi)^{1/2}
    double c3 = 1.0;    // Kukavica radius
    double c4 = 12.0;   // damped dimension
    double c5 = 0.0;    // damped nodes; 0 selects 68^{1/4}
    double c7 = 1.0;    // Gevrey route radius
    double c8 = 1.0;    // Gevrey route radius, small-nu form

    double node_c2() const;
    double node_c5() const;
    std::map<std::string, double> echo() const;
};

struct BoundsReport {
    // classical
    double la_ft = 0.0;
    double la_kukavica = 0.0;
    double l_nodes_ns = 0.0;
    double dim_classical = 0.0;
    // damped
    double dim_damped = 0.0;
    double l_f_damped = 0.0;
    double l_dn_damped = 0.0;
    double la_thm21 = 0.0;
    double la_gevrey_asymptotic = 0.0;
    double la_thm32 = 0.0;
    std::vector<std::string> warnings;
    std::map<std::string, double> constants;
};

/// ln(max(x, e)).
double clamped_log(double x);

/// Rejects zero forcing and non-positive parameters.
Dimensionless dimensionless(const PhysParams& params, const ForcingSpec& forcing, const GridSpec& grid,
                            double sigma1);

/// Fills the damped fields of `report`. D <= 1 adds a warning.
BoundsReport damped_bounds(const Dimensionless& d, double area, double sigma1, const BoundsConstants& k = {});
void damped_bounds(BoundsReport& report, const Dimensionless& d, double area, double sigma1,
                   const BoundsConstants& k = {});

/// Fills the classical fields. G <= 1 adds a warning.
BoundsReport classical_bounds(const Dimensionless& g, double area, const BoundsConstants& k = {});
void classical_bounds(BoundsReport& report, const Dimensionless& g, double area, const BoundsConstants& k = {});

/// Both families.
BoundsReport all_bounds(const Dimensionless& d, double area, double sigma1, const BoundsConstants& k = {});

/// |Omega|^{1/2} / (C D^{1/2} (1 + log D)^{1/2}).
double la_thm32(double D, double area, double C = 1.0);

struct StripBound {
    double value = 0.0;
    bool upper_bound = false;   // true for multi-mode forcing
};

/// Sup of the complexified forcing over the strip |Im x| <= delta_F.
StripBound strip_bound_mf(const ForcingSpec& forcing, double delta_F);

struct StripLemma {
    double t0 = 0.0;
    double p = 2.0;
    double M2p = 0.0;
    double MF = 0.0;
    double mu = 0.0;
    double delta_F = 0.0;
    double C = 1.0;

    /// Minimum of the five radius terms at time t > 0.
    double delta(double t) const;
    std::vector<double> delta_terms(double t) const;
};

/// t0 = mu M2p^2 / (C MF^2) and the strip width delta(t). Requires p >= 3/2.
StripLemma kukavica_time_and_strip(double p, double M2p, double MF, double mu, double delta_F, double C = 1.0);

struct GronwallTerm {
    double K = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// min(T, min_j ((alpha_j + 1) / (N K_j 2^{beta_j^+ + gamma_j} M^{beta_j + gamma_j - 1}))^{1/(alpha_j + 1)}).
double gronwall_time(const std::vector<GronwallTerm>& terms, double M, double N, double T);

/// Lower bound on the time the phi-weighted Gevrey norm stays within twice
/// its initial size, given |A^{1/2} u0| (= |omega0|_2) and the forcing's
/// sigma1 Gevrey norm. c2 and c3 are the Sobolev and ODE constants of that
/// argument.
double gevrey_existence_time(double a_half_u0, double a_half_f_sigma1, const PhysParams& params,
                             const GridSpec& grid, double c2 = 1.0, double c3 = 1.0);

nlohmann::json to_json(const Dimensionless& d);
nlohmann::json to_json(const BoundsReport& r);

}  // namespace gvns
