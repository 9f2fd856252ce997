#include <doctest.h>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"
#include "support.hpp"

using namespace gvns;

namespace {

SpectralField cos_x1(const GridSpec& g, int j = 1) {
    SpectralField s(g);
    s.set_mode(j, 0, 0.5);
    return s;
}

/// Midpoint quadrature of |f|^p on an m x m grid.
double quad_lp(const SpectralField& f, int p, int m) {
    const RealVector v = evaluate_padded(f, m);
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::abs(x), p);
    return std::pow(acc * f.grid().area() / (double(m) * m), 1.0 / p);
}

}  // namespace

TEST_CASE("Lp norms of cos x1 in closed form") {
    const GridSpec g(16);
    const SpectralField f = cos_x1(g);
    const double area = g.area();
    CHECK(norm(f, NormSpec::L2()) == doctest::Approx(std::sqrt(area / 2)).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Lp(4)) == doctest::Approx(std::pow(3.0 / 8.0 * area, 0.25)).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Lp(8)) == doctest::Approx(std::pow(35.0 / 128.0 * area, 0.125)).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Linf()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Lp norms agree with fine quadrature for random fields") {
    const GridSpec g(24);
    const SpectralField f = testing::random_vorticity(g, 3);
    for (int p : {2, 4, 6, 8}) {
        CHECK(norm(f, NormSpec::Lp(p)) == doctest::Approx(quad_lp(f, p, 240)).epsilon(1e-12));
    }
    const PhysicalNorms pn = physical_norms(f);
    CHECK(pn.l2 == doctest::Approx(norm(f, NormSpec::L2())).epsilon(1e-12));
    CHECK(pn.l4 == doctest::Approx(norm(f, NormSpec::Lp(4))).epsilon(1e-12));
    CHECK(pn.l8 == doctest::Approx(norm(f, NormSpec::Lp(8))).epsilon(1e-12));
    CHECK(pn.linf <= quad_lp(f, 64, 480) * 1.5);
}

TEST_CASE("L-infinity of cos x1 + cos x2 is 2") {
    const GridSpec g(32);
    SpectralField f = cos_x1(g);
    f.set_mode(0, 1, 0.5);
    CHECK(norm(f, NormSpec::Linf()) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Sobolev and Gevrey weights use physical wavenumbers") {
    const GridSpec g(32);
    const SpectralField f = cos_x1(g, 2);
    const double l2 = norm(f, NormSpec::L2());
    CHECK(norm(f, NormSpec::Sobolev(0.5)) == doctest::Approx(2.0 * l2).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Sobolev(1.0)) == doctest::Approx(4.0 * l2).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Gevrey(0.3, 0.5, 0.0)) == doctest::Approx(std::exp(0.6) * l2).epsilon(1e-14));
    CHECK(norm(f, NormSpec::Gevrey(0.3, 1.0, 0.5)) == doctest::Approx(2.0 * std::exp(1.2) * l2).epsilon(1e-14));

    const GridSpec h(16, 4.0 * two_pi);   // k = 2 pi j / L = j / 4
    SpectralField q(h);
    q.set_mode(4, 0, 0.5);
    CHECK(norm(q, NormSpec::Sobolev(0.5)) == doctest::Approx(norm(q, NormSpec::L2())).epsilon(1e-14));
}

TEST_CASE("Gevrey overflow names the shell") {
    const GridSpec g(32);
    const SpectralField f = cos_x1(g, 10);
    try {
        norm(f, NormSpec::Gevrey(200.0, 0.5, 0.0));
        FAIL("expected overflow");
    } catch (const OverflowError& e) {
        CHECK(e.shell() == doctest::Approx(10.0));
    }
}

TEST_CASE("norm parameters are validated") {
    CHECK_THROWS_AS(NormSpec::Lp(3), ValidationError);
    CHECK_THROWS_AS(NormSpec::Lp(0), ValidationError);
    CHECK_THROWS_AS(NormSpec::Sobolev(-1.0), ValidationError);
    CHECK_THROWS_AS(NormSpec::Gevrey(-0.1, 0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(NormSpec::Gevrey(0.1, 1.5, 0.0), ValidationError);
}

TEST_CASE("shell spectrum takes the maximum per integer band") {
    const GridSpec g(32);
    SpectralField f(g);
    f.set_mode(3, 4, cplx(0.0, 2.0));   // |j| = 5
    f.set_mode(5, 0, 0.5);              // |j| = 5
    f.set_mode(1, 1, 0.25);             // |j| = 1.414 -> shell 1
    const auto s = shell_spectrum(f);
    REQUIRE(!s.empty());
    CHECK(s.front().kappa == 1);
    CHECK(s.front().value == doctest::Approx(0.25));
    for (const auto& v : s) {
        if (v.kappa == 5) CHECK(v.value == doctest::Approx(2.0));
        if (v.kappa == 2 || v.kappa == 4) CHECK(v.value == 0.0);
    }
    CHECK(s.back().kappa == g.dealias_cutoff());
    CHECK(bandwidth(f) == 5);
}
