#include <doctest.h>

#include <sstream>
#include <tuple>

#include "gvns/diagnostics.hpp"
#include "gvns/errors.hpp"
#include "support.hpp"

using namespace gvns;

namespace {

std::vector<ShellValue> synthetic(double (*shape)(double, double), double param, int kmax) {
    std::vector<ShellValue> s;
    for (int k = 1; k <= kmax; ++k) s.push_back({k, shape(k, param)});
    return s;
}

double expo(double k, double a) { return 3.0 * std::exp(-a * k); }
double rippled(double k, double a) { return 3.0 * std::exp(-a * k) * (1.0 + 1e-3 * std::sin(1.7 * k)); }
double power(double k, double q) { return std::pow(k, -q); }

}  // namespace

TEST_CASE("radius estimator recovers exponential spectra within 1%") {
    for (double L : {two_pi, 3.0}) {
        for (double la : {0.1, 0.3, 1.0}) {
            const double a = two_pi * la / L;
            RadiusOptions o;
            o.length = L;
            o.cutoff = 85;
            for (auto shape : {expo, rippled}) {
                const RadiusEstimate e = estimate_radius(synthetic(shape, a, 85), o);
                CHECK(e.accepted);
                CHECK(e.r2 >= 0.9999);
                CHECK(std::abs(e.l_a - la) <= 0.01 * la);
            }
        }
    }
}

TEST_CASE("radius estimator rejects power laws") {
    RadiusOptions o;
    o.cutoff = 85;
    for (double q : {2.0, 3.0, 5.0, 8.0}) {
        const RadiusEstimate e = estimate_radius(synthetic(power, q, 85), o);
        CHECK_FALSE(e.accepted);
    }
}

TEST_CASE("radius estimator window and degenerate inputs") {
    RadiusOptions o;
    o.cutoff = 40;
    const RadiusEstimate e = estimate_radius(synthetic(expo, 0.5, 40), o);
    CHECK(e.kappa_lo == 11);   // first shell with S <= 1e-2 max
    CHECK(e.kappa_hi == 38);   // cutoff - 2
    CHECK(e.shells == 28);
    CHECK_FALSE(estimate_radius({}, o).accepted);
    CHECK_FALSE(estimate_radius({{1, 0.0}, {2, 0.0}}, o).accepted);
    // too few shells in the window
    CHECK_FALSE(estimate_radius(synthetic(expo, 8.0, 40), o).accepted);
}

TEST_CASE("snapshot record is consistent with the spectral definitions") {
    const GridSpec g(32);
    const PhysParams p{0.01, 0.1};
    ForcingSpec fs;
    fs.modes.push_back({{2, 1}, 1.0, 0.0});
    const SpectralField F = build_forcing(fs, g);
    const State s{0.0, testing::random_vorticity(g, 8)};
    const DiagnosticsRecord r = record(s, p, F, 1.0);
    const auto [u1, u2] = biot_savart(s.omega);
    CHECK(r.energy == doctest::Approx(0.5 * (inner(u1, u1) + inner(u2, u2))).epsilon(1e-13));
    CHECK(r.enstrophy == doctest::Approx(0.5 * inner(s.omega, s.omega)).epsilon(1e-14));
    CHECK(r.lp.l2 == doctest::Approx(std::sqrt(2.0 * r.enstrophy)).epsilon(1e-12));
    REQUIRE(r.gevrey_half);
    CHECK(*r.gevrey_half == doctest::Approx(r.lp.l2).epsilon(1e-12));   // phi(0) = 0
    CHECK(r.budget_residual < 1e-13);
    CHECK(r.dissipation == doctest::Approx(p.nu * 2.0 * r.enstrophy));
    CHECK(r.damping == doctest::Approx(p.mu * 2.0 * r.energy));
    // injection <f, u>
    SpectralField f1(g), f2(g);
    std::tie(f1, f2) = biot_savart(F);
    CHECK(r.injection == doctest::Approx(inner(f1, u1) + inner(f2, u2)).epsilon(1e-12));
    REQUIRE(r.radius);
    CHECK(r.resolution_ratio > 0.0);
}

TEST_CASE("gevrey phi saturates at sigma1") {
    const GridSpec g(16);
    const PhysParams p{0.01, 0.1};
    CHECK(gevrey_phi(10.0, p, g, 1.0) == doctest::Approx(0.1));
    CHECK(gevrey_phi(1e4, p, g, 1.0) == 1.0);
    CHECK(gevrey_phi(-1.0, p, g, 1.0) == 0.0);
}

TEST_CASE("vorticity bound check on synthetic series") {
    const GridSpec g(16);
    ForcingSpec fs;
    fs.modes.push_back({{1, 0}, 2.0, 0.0});
    const SpectralField F = build_forcing(fs, g);
    const double mu = 0.5;
    const double f_inf = forcing_lp(F, LpIndex::linf);
    CHECK(f_inf == doctest::Approx(2.0));
    std::vector<DiagnosticsRecord> series;
    for (int i = 0; i <= 20; ++i) {
        DiagnosticsRecord r;
        r.t = 0.5 * i;
        const double d = std::exp(-mu * r.t);
        r.lp.linf = 10.0 * d + f_inf * (1 - d) / mu;   // exactly on the bound
        series.push_back(r);
    }
    VorticityBoundCheck c = check_vorticity_bound(series, F, mu, LpIndex::linf);
    CHECK(c.ok());
    CHECK(std::abs(c.worst) < 1e-12);
    series[7].lp.linf += 1e-3;
    c = check_vorticity_bound(series, F, mu, LpIndex::linf);
    CHECK(c.violations == 1);
    CHECK_THROWS_AS(check_vorticity_bound(series, F, 0.0, LpIndex::l2), ValidationError);
}

TEST_CASE("centered budget residual vanishes for an exact balance") {
    std::vector<DiagnosticsRecord> s;
    for (double t : {0.0, 0.1, 0.25, 0.3, 0.5}) {
        DiagnosticsRecord r;
        r.t = t;
        r.energy = 1.0 + 2.0 * t - t * t;   // dE/dt = 2 - 2t
        r.injection = 3.0;
        r.dissipation = 0.5 + t;
        r.damping = 0.5 + t;
        s.push_back(r);
    }
    for (double v : centered_budget_residuals(s)) CHECK(v < 1e-12);
}

TEST_CASE("csv layout") {
    std::ostringstream o;
    write_csv_header(o);
    DiagnosticsRecord r;
    r.t = 0.5;
    r.energy = 1.0 / 3.0;
    write_csv_row(o, r);
    const std::string s = o.str();
    CHECK(s.rfind("t,energy,enstrophy,l2,l4,l8,linf,gevrey_half,la,r2,accepted,budget_residual\n", 0) == 0);
    CHECK(s.find("0.5,0.33333333333333331,0,0,0,0,0,,,,0,0\n") != std::string::npos);
}
