#include <doctest.h>

#include <cmath>

#include "gvns/errors.hpp"
#include "gvns/experiments.hpp"
#include "gvns/norms.hpp"
#include "support.hpp"

using namespace gvns;

namespace {

/// Independent regression: normal equations solved by Cramer's rule in
/// long double.
long double oracle_slope(const std::vector<std::pair<double, double>>& p) {
    long double n = p.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [D, la] : p) {
        const long double x = std::log((long double)D), y = std::log((long double)la);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult synthetic_rows(double (*law)(double)) {
    SweepResult s;
    for (double D : {1e3, 1e4, 1e5, 1e6}) {
        SweepRow r;
        r.D = D;
        r.measured_la = law(D);
        r.la_thm32 = la_thm32(D, 1.0);
        r.l_dn_damped = std::pow(68.0, 0.25) * std::sqrt(1.0 / D);
        r.resolved = true;
        s.rows.push_back(r);
    }
    return s;
}

double half_law(double D) { return 1.0 / std::sqrt(D); }
double log_law(double D) { return 1.0 / (std::sqrt(D) * std::sqrt(1.0 + std::log(D))); }

ForcingSpec main_forcing() {
    ForcingSpec f;
    f.modes.push_back({{2, 1}, 1.0, 0.0});
    return f;
}

}  // namespace

TEST_CASE("fit_scaling on exact power laws") {
    const ScalingFit a = fit_scaling({{10, 1}, {1000, 0.1}, {100, std::pow(10.0, -0.5)}});
    CHECK(a.exponent == doctest::Approx(-0.5).epsilon(1e-12));
    std::vector<std::pair<double, double>> cubic;
    for (double D : {2.0, 5.0, 11.0, 40.0}) cubic.emplace_back(D, 7.0 * std::pow(D, -3.0));
    const ScalingFit c = fit_scaling(cubic);
    CHECK(std::abs(c.exponent + 3.0) < 1e-10);
    CHECK(std::abs(c.exponent - double(oracle_slope(cubic))) < 1e-12);
    CHECK(c.stderr_ < 1e-10);
    for (auto& [D, la] : cubic) la *= 123.0;
    CHECK(std::abs(fit_scaling(cubic).exponent - c.exponent) < 1e-12);
}

TEST_CASE("fit_scaling rejections") {
    CHECK_THROWS_AS(fit_scaling({{10, 1}}), ValidationError);
    CHECK_THROWS_AS(fit_scaling({{10, 1}, {10, 2}, {10, 3}}), ValidationError);
    CHECK_THROWS_AS(fit_scaling({{10, 1}, {20, -2}, {30, 3}}), ValidationError);
}

TEST_CASE("fit of the log-corrected law over D in [1e3, 1e6]") {
    std::vector<std::pair<double, double>> p;
    for (double e = 3.0; e <= 6.0001; e += 0.25) {
        const double D = std::pow(10.0, e);
        p.emplace_back(D, log_law(D));
    }
    const double k = fit_scaling(p).exponent;
    CHECK(k > -0.62);
    CHECK(k < -0.50);
    CHECK(std::abs(k - double(oracle_slope(p))) < 1e-12);
}

TEST_CASE("sweep fit filters unresolved rows") {
    SweepResult s = synthetic_rows(half_law);
    fit_sweep(s);
    REQUIRE(s.fitted_exponent);
    CHECK(std::abs(*s.fitted_exponent + 0.5) < 1e-12);
    s.rows[1].measured_la = 5.0;
    s.rows[1].resolved = false;
    fit_sweep(s);
    CHECK(std::abs(*s.fitted_exponent + 0.5) < 1e-12);
    s.rows[2].resolved = false;
    fit_sweep(s);
    CHECK_FALSE(s.fitted_exponent);
}

TEST_CASE("compare_bounds on synthetic rows") {
    const BoundsComparison exact = compare_bounds(synthetic_rows(log_law));
    CHECK(exact.spread == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(exact.spread_flag);
    CHECK(exact.violation_factor == doctest::Approx(1.0).epsilon(1e-14));

    const BoundsComparison half = compare_bounds(synthetic_rows(half_law));
    CHECK(half.spread == doctest::Approx(std::sqrt((1 + std::log(1e6)) / (1 + std::log(1e3)))).epsilon(1e-14));
    CHECK(half.rows.size() == 4);
    CHECK(half.rows[0].ratio_dn == doctest::Approx(std::pow(68.0, -0.25)).epsilon(1e-14));

    SweepResult empty = synthetic_rows(half_law);
    for (auto& r : empty.rows) r.resolved = false;
    CHECK_THROWS_AS(compare_bounds(empty), ValidationError);

    SweepResult low = synthetic_rows(log_law);
    low.rows[2].measured_la = *low.rows[2].measured_la / 4;
    const BoundsComparison v = compare_bounds(low, 2.0);
    CHECK(v.violated);
    CHECK(v.violation_factor == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(v.spread_flag);
}

TEST_CASE("mode counting and overwriting") {
    const GridSpec g(32);   // cutoff 10
    CHECK(count_modes(g, 0) == 0);
    CHECK(count_modes(g, 1) == 4);
    CHECK(count_modes(g, 2) == 12);
    CHECK(count_modes(g, 15) == 21 * 21 - 1);
    const SpectralField a = testing::random_vorticity(g, 1), b = testing::random_vorticity(g, 2);
    SpectralField c = b;
    overwrite_low_modes(c, a, 3);
    CHECK(c.coeff(2, -2) == a.coeff(2, -2));
    CHECK(c.coeff(-3, 0) == a.coeff(-3, 0));
    CHECK(c.coeff(3, 1) == b.coeff(3, 1));
    CHECK(c.hermitian_defect() == 0.0);
}

TEST_CASE("copying every mode synchronizes after one step") {
    SyncConfig sc;
    sc.sim.grid = GridSpec(32);
    sc.sim.params = {0.01, 0.1};
    sc.sim.forcing = main_forcing();
    sc.sim.t_end = 1.0;
    sc.master_start = State{0.0, testing::random_vorticity(sc.sim.grid, 3, 2.0)};
    sc.kappas = {int(std::ceil(std::sqrt(2.0) * 10))};
    sc.horizon = 1.0;
    const SyncReport r = determining_modes(sc);
    REQUIRE(r.results.size() == 1);
    CHECK(r.results[0].synchronized);
    CHECK(r.results[0].error.back().second == 0.0);
    CHECK(r.results[0].error.size() == 2);
    CHECK(r.D == doctest::Approx(39478.4).epsilon(1e-6));
    CHECK(r.n_pred == doctest::Approx(r.D / std::sqrt(68.0)));
    sc.kappas = {99};
    CHECK_THROWS_AS(determining_modes(sc), ValidationError);
}

TEST_CASE("laminar single-mode regime synchronizes for kappa above the forcing shell") {
    SyncConfig sc;
    sc.sim.grid = GridSpec(32);
    sc.sim.params = {0.05, 0.5};
    sc.sim.forcing = main_forcing();
    sc.sim.t_end = 1.0;
    sc.master_start = State{0.0, testing::random_vorticity(sc.sim.grid, 5, 1.0)};
    sc.kappas = {3, 5};
    const SyncReport r = determining_modes(sc);
    for (const SyncResult& s : r.results) {
        CHECK(s.synchronized);
        REQUIRE(s.decay_rate);
        CHECK(*s.decay_rate > 0.0);
        for (const auto& [t, e] : s.error) CHECK(e >= 0.0);
    }
    CHECK(r.min_sufficient_n_det == count_modes(sc.sim.grid, 3));
    CHECK(r.monotonicity_findings.empty());
}

TEST_CASE("sweep rows are deterministic and independent of order and jobs") {
    SweepConfig c;
    c.base.grid = GridSpec(32);
    c.base.params = {0.0, 0.2};
    c.base.forcing = main_forcing();
    c.base.t_end = 3.0;
    c.base.spinup = 2.0;
    c.base.initial = init::Random{9, 2.0, 1.0};
    c.refine = false;
    c.nu_values = {0.4, 0.2, 0.8};
    const SweepResult a = run_sweep(c);
    REQUIRE(a.rows.size() == 3);
    CHECK(a.rows[0].nu == 0.8);
    CHECK(a.rows[2].nu == 0.2);
    CHECK(a.rows[0].resolved);
    c.nu_values = {0.2, 0.8, 0.4};
    c.jobs = 3;
    const SweepResult b = run_sweep(c);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.rows[i].nu == b.rows[i].nu);
        CHECK(a.rows[i].D == b.rows[i].D);
        CHECK(a.records[i].size() == b.records[i].size());
        CHECK(a.records[i].back().energy == b.records[i].back().energy);
        CHECK(a.rows[i].summary.median_resolution_ratio == b.rows[i].summary.median_resolution_ratio);
    }
    CHECK(a.rows[0].D < a.rows[1].D);
    c.nu_values = {0.02, 0.04};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
    c.nu_values = {0.02, 0.02, 0.04};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
}
