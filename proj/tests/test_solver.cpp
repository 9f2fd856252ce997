#include <doctest.h>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"
#include "gvns/run.hpp"
#include "support.hpp"

using namespace gvns;

namespace {

ForcingSpec single_forcing(int k1, int k2, double amp, double phase = 0.0) {
    ForcingSpec f;
    f.modes.push_back({{k1, k2}, amp, phase});
    return f;
}

State integrate(State s, const Stepper& proto, double dt, double t_end) {
    Stepper st(proto.grid(), proto.params(), proto.forcing());
    const long steps = std::lround(t_end / dt);
    for (long i = 0; i < steps; ++i) st.step(s, dt);
    return s;
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
    return norm(a - b, NormSpec::L2()) / norm(b, NormSpec::L2());
}

}  // namespace

TEST_CASE("forced single mode follows the closed form") {
    // omega_hat(t) = omega_s + (omega_0 - omega_s) e^{-(nu |k|^2 + mu) t}
    const GridSpec g(32);
    const PhysParams p{0.01, 0.1};
    const SpectralField F = build_forcing(single_forcing(2, 1, 1.0, 0.3), g);
    Stepper st(g, p, F);
    State s{0.0, SpectralField(g)};
    s.omega.set_mode(2, 1, cplx(0.2, -0.4));
    const cplx w0 = s.omega.coeff(2, 1);
    const double lam = p.nu * 5.0 + p.mu;
    const cplx ws = F.coeff(2, 1) / lam;
    for (int i = 0; i < 400; ++i) st.step(s, 0.025);
    CHECK(s.t == doctest::Approx(10.0).epsilon(1e-14));
    const cplx expect = ws + (w0 - ws) * std::exp(-lam * 10.0);
    CHECK(std::abs(s.omega.coeff(2, 1) - expect) <= 1e-9 * std::abs(expect));
    s.omega.set_mode(2, 1, 0.0);
    CHECK(s.omega.max_abs() < 1e-14);
}

TEST_CASE("steady Euler state is preserved") {
    const GridSpec g(32);
    Stepper st(g, PhysParams{0.0, 0.0}, SpectralField(g));
    State s{0.0, SpectralField(g)};
    s.omega.set_mode(1, 0, 0.5);
    s.omega.set_mode(0, 1, 0.5);
    const SpectralField w0 = s.omega;
    for (int i = 0; i < 1000; ++i) st.step(s, 0.01);
    double err = 0.0;
    for (std::size_t i = 0; i < g.half_size(); ++i) err = std::max(err, std::abs(s.omega.data()[i] - w0.data()[i]));
    CHECK(err <= 1e-12);
}

TEST_CASE("inviscid unforced run conserves energy and enstrophy") {
    const GridSpec g(32);
    Stepper st(g, PhysParams{0.0, 0.0}, SpectralField(g));
    State s{0.0, testing::random_vorticity(g, 17)};
    auto energy = [](const SpectralField& w) {
        const SpectralField psi = stream_function(w);
        return -inner(psi, w);
    };
    const double e0 = energy(s.omega), z0 = inner(s.omega, s.omega);
    for (int i = 0; i < 1000; ++i) st.step(s, 2e-3);
    CHECK(std::abs(energy(s.omega) - e0) <= 1e-8 * e0);
    CHECK(std::abs(inner(s.omega, s.omega) - z0) <= 1e-8 * z0);
}

TEST_CASE("self-convergence order is at least 2.7") {
    const GridSpec g(32);
    const PhysParams p{0.01, 0.1};
    const SpectralField F = build_forcing(single_forcing(2, 1, 1.0), g);
    const Stepper proto(g, p, F);
    const State s0{0.0, testing::random_vorticity(g, 5, 2.0)};
    const double T = 1.0, dt = 0.04;
    const State ref = integrate(s0, proto, dt / 8, T);
    const double e1 = rel_l2(integrate(s0, proto, dt, T).omega, ref.omega);
    const double e2 = rel_l2(integrate(s0, proto, dt / 2, T).omega, ref.omega);
    const double order = std::log2(e1 / e2);
    MESSAGE("observed order " << order);
    CHECK(order >= 2.7);
}

TEST_CASE("blow-up raises and leaves the state untouched") {
    const GridSpec g(32);
    Stepper st(g, PhysParams{0.0, 0.0}, SpectralField(g));
    State s{0.0, testing::random_vorticity(g, 2, 1e3)};
    const State before = s;
    bool thrown = false;
    for (int i = 0; i < 200 && !thrown; ++i) {
        const State prev = s;
        try {
            st.step(s, 1.0);
        } catch (const BlowupError& e) {
            thrown = true;
            CHECK(e.last_valid_time() == prev.t);
            CHECK(s.t == prev.t);
            CHECK(s.omega.is_finite());
        }
    }
    CHECK(thrown);
    (void)before;
}

TEST_CASE("forcing validation names the mode") {
    const GridSpec g(32);
    CHECK_THROWS_AS(build_forcing(single_forcing(0, 0, 1.0), g), ValidationError);
    try {
        build_forcing(single_forcing(11, 0, 1.0), g);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("11") != std::string::npos);
    }
    CHECK_THROWS_AS(build_forcing(single_forcing(1, 0, std::nan("")), g), ValidationError);
    const SpectralField f = build_forcing(single_forcing(2, 1, 1.0, 0.5), g);
    CHECK(std::abs(f.coeff(2, 1) - std::polar(0.5, 0.5)) < 1e-16);
    CHECK(std::abs(f.coeff(-2, -1) - std::polar(0.5, -0.5)) < 1e-16);
}

TEST_CASE("random initial data is reproducible and normalized") {
    const GridSpec g(32);
    const SpectralField a = initial_vorticity(init::Random{42, 2.0, 1.5}, g);
    const SpectralField b = initial_vorticity(init::Random{42, 2.0, 1.5}, g);
    const SpectralField c = initial_vorticity(init::Random{43, 2.0, 1.5}, g);
    CHECK(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
    CHECK(!std::equal(a.data().begin(), a.data().end(), c.data().begin()));
    CHECK(norm(a, NormSpec::L2()) / std::sqrt(g.area()) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(a.is_dealiased());
    CHECK(a.at(0, 0) == cplx(0.0));
}

TEST_CASE("run samples, lands on t_end and reports blow-up without throwing") {
    SimConfig c;
    c.grid = GridSpec(32);
    c.params = {0.01, 0.1};
    c.forcing = single_forcing(2, 1, 1.0);
    c.t_end = 1.234;
    c.spinup = 0.5;
    c.initial = init::Random{1, 2.0, 1.0};
    const RunResult r = run(c);
    CHECK(!r.blowup);
    CHECK(r.final_state.t == doctest::Approx(1.234).epsilon(1e-14));
    CHECK(r.records.front().t == 0.0);
    CHECK(r.records.back().t == doctest::Approx(1.234).epsilon(1e-14));
    CHECK(r.summary.post_spinup_samples > 0);

    SimConfig bad = c;
    bad.params = {0.0, 0.0};
    bad.forcing = {};
    bad.initial = init::Random{1, 2.0, 1e4};
    bad.dt = 0.5;
    bad.t_end = 100.0;
    const RunResult b = run(bad);
    CHECK(b.blowup);
    CHECK(!b.records.empty());
    CHECK(b.final_state.omega.is_finite());
}

TEST_CASE("config validation") {
    SimConfig c;
    c.forcing = single_forcing(1, 0, 1.0);
    c.t_end = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.t_end = 1.0;
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.dt.reset();
    c.params = {-1.0, 0.1};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.params = {0.01, 0.1};
    CHECK(c.spinup_time() == doctest::Approx(100.0));
}
