#include <doctest.h>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"
#include "gvns/spectral.hpp"
#include "support.hpp"

using namespace gvns;

TEST_CASE("velocity is divergence free and its curl returns omega") {
    const GridSpec g(32);
    const SpectralField w = testing::random_vorticity(g, 7);
    const auto [u1, u2] = biot_savart(w);
    const Wavenumbers wn(g);
    double div = 0.0, scale = 0.0;
    for (int r = 0; r < g.n(); ++r)
        for (int c = 0; c < g.half_cols(); ++c) {
            const cplx d = wn.k1[r] * u1.at(r, c) + wn.k2[c] * u2.at(r, c);
            div = std::max(div, std::abs(d));
            scale = std::max(scale, std::abs(u1.at(r, c)));
        }
    CHECK(div <= 1e-15 * scale);
    const SpectralField back = rot(u1, u2);
    double err = 0.0;
    for (std::size_t i = 0; i < g.half_size(); ++i) err = std::max(err, std::abs(back.data()[i] - w.data()[i]));
    CHECK(err <= 1e-15 * w.max_abs() * 10);
}

TEST_CASE("single mode velocity in closed form") {
    // omega = cos(x1): psi = -cos(x1), u = (-d2 psi, d1 psi) = (0, sin x1)
    const GridSpec g(16);
    SpectralField w(g);
    w.set_mode(1, 0, 0.5);
    const auto [u1, u2] = biot_savart(w);
    const PhysicalField p1 = to_physical(u1), p2 = to_physical(u2);
    double err = 0.0;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            err = std::max(err, std::abs(p1(a, b)));
            err = std::max(err, std::abs(p2(a, b) - std::sin(p2.x1(a))));
        }
    CHECK(err < 1e-14);
    const PhysicalField psi = to_physical(stream_function(w));
    CHECK(std::abs(psi(3, 5) + std::cos(psi.x1(3))) < 1e-14);
}

TEST_CASE("a nonzero mean is rejected") {
    const GridSpec g(16);
    SpectralField w(g);
    w.at(0, 0) = 1.0;
    CHECK_THROWS_AS(biot_savart(w), ValidationError);
    CHECK_THROWS_AS(advect(w), ValidationError);
}

TEST_CASE("advection term of two modes in closed form") {
    // omega = cos x1 + cos 2x2 gives u . grad omega = -1.5 sin x1 sin 2x2
    const GridSpec g(16);
    SpectralField w(g);
    w.set_mode(1, 0, 0.5);
    w.set_mode(0, 2, 0.5);
    const PhysicalField a = to_physical(advect(w));
    double err = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            err = std::max(err, std::abs(a(i, j) + 1.5 * std::sin(a.x1(i)) * std::sin(2 * a.x2(j))));
    CHECK(err < 1e-14);
}

TEST_CASE("steady Euler state has zero advection") {
    const GridSpec g(32);
    SpectralField w(g);
    w.set_mode(1, 0, 0.5);
    w.set_mode(0, 1, 0.5);
    CHECK(advect(w).max_abs() < 1e-15);
}

TEST_CASE("advection is orthogonal to omega and psi") {
    for (int n : {24, 32, 64}) {
        const GridSpec g(n);
        const SpectralField w = testing::random_vorticity(g, 40 + n, 3.0);
        const SpectralField a = advect(w);
        const SpectralField psi = stream_function(w);
        const double enst = std::abs(inner(w, a)) / (std::sqrt(inner(w, w)) * std::sqrt(inner(a, a)));
        const double ener = std::abs(inner(psi, a)) / (std::sqrt(inner(psi, psi)) * std::sqrt(inner(a, a)));
        CHECK(enst <= 1e-13);
        CHECK(ener <= 1e-13);
    }
}

TEST_CASE("advection output is dealiased with zero mean") {
    const GridSpec g(32);
    const SpectralField a = advect(testing::random_vorticity(g, 9));
    CHECK(a.is_dealiased());
    CHECK(a.at(0, 0) == cplx(0.0));
    CHECK(a.hermitian_defect() < 1e-14);
}

TEST_CASE("advection matches a padded physical-space product") {
    const GridSpec g(24);
    const SpectralField w = testing::random_vorticity(g, 21);
    const SpectralField a = advect(w);
    // u . grad omega evaluated exactly on a 3/2-padded grid, then projected
    const int m = 48;
    const auto [u1, u2] = biot_savart(w);
    const Wavenumbers wn(g);
    SpectralField d1(g), d2(g);
    for (int r = 0; r < g.n(); ++r)
        for (int c = 0; c < g.half_cols(); ++c) {
            d1.at(r, c) = cplx(0, wn.k1[r]) * w.at(r, c);
            d2.at(r, c) = cplx(0, wn.k2[c]) * w.at(r, c);
        }
    const RealVector U1 = evaluate_padded(u1, m), U2 = evaluate_padded(u2, m);
    const RealVector D1 = evaluate_padded(d1, m), D2 = evaluate_padded(d2, m);
    PhysicalField prod{GridSpec(m)};
    for (std::size_t i = 0; i < prod.values().size(); ++i) prod.values()[i] = U1[i] * D1[i] + U2[i] * D2[i];
    const SpectralField fine = to_spectral(prod);
    double err = 0.0;
    const int K = g.dealias_cutoff();
    for (int j1 = -K; j1 <= K; ++j1)
        for (int j2 = 0; j2 <= K; ++j2) err = std::max(err, std::abs(fine.coeff(j1, j2) - a.coeff(j1, j2)));
    CHECK(err < 1e-13 * fine.max_abs() * 10);
}

TEST_CASE("resampling up and down is the identity on retained modes") {
    const GridSpec g(32), h(64);
    const SpectralField w = testing::random_vorticity(g, 4);
    const SpectralField up = resample(w, h);
    CHECK(up.coeff(5, -7) == w.coeff(5, -7));
    const SpectralField back = resample(up, g);
    double err = 0.0;
    for (std::size_t i = 0; i < g.half_size(); ++i) err = std::max(err, std::abs(back.data()[i] - w.data()[i]));
    CHECK(err == 0.0);
    CHECK(std::abs(norm(up, NormSpec::L2()) - norm(w, NormSpec::L2())) < 1e-13);
}

TEST_CASE("inner product matches collocation quadrature") {
    const GridSpec g(16);
    const SpectralField a = testing::random_vorticity(g, 1), b = testing::random_vorticity(g, 2);
    const PhysicalField pa = to_physical(a), pb = to_physical(b);
    double q = 0.0;
    for (std::size_t i = 0; i < g.real_size(); ++i) q += pa.values()[i] * pb.values()[i];
    q *= g.area() / double(g.real_size());
    CHECK(std::abs(inner(a, b) - q) < 1e-12 * std::abs(q) + 1e-14);
    CHECK(inner(a, b) == doctest::Approx(inner(b, a)).epsilon(1e-15));
}

TEST_CASE("mode setters keep Hermitian symmetry") {
    const GridSpec g(8);
    SpectralField s(g);
    s.set_mode(-4, 0, cplx(1.0, 2.0));   // self-conjugate: real part only
    s.set_mode(3, -2, cplx(0.5, -0.5));
    s.add_mode(3, -2, cplx(0.5, 0.5));
    CHECK(s.coeff(-4, 0) == cplx(1.0, 0.0));
    CHECK(s.coeff(3, -2) == cplx(1.0, 0.0));
    CHECK(s.coeff(-3, 2) == cplx(1.0, 0.0));
    CHECK(s.hermitian_defect() == 0.0);
    const SpectralField r = SpectralField::from_full(g, s.to_full());
    CHECK(r.coeff(3, -2) == s.coeff(3, -2));
}
