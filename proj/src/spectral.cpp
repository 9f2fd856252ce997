#include "gvns/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "gvns/errors.hpp"

namespace gvns {

Wavenumbers::Wavenumbers(const GridSpec& g)
    : grid(g),
      k1(g.n()),
      k2(g.half_cols()),
      k_sq(g.half_size()),
      inv_k_sq(g.half_size()),
      keep(g.half_size()) {
    const int kc = g.dealias_cutoff();
    for (int r = 0; r < g.n(); ++r) k1[r] = g.k_unit() * g.row_index(r);
    for (int c = 0; c < g.half_cols(); ++c) k2[c] = g.k_unit() * c;
    for (int r = 0; r < g.n(); ++r) {
        for (int c = 0; c < g.half_cols(); ++c) {
            const std::size_t i = std::size_t(r) * g.half_cols() + c;
            k_sq[i] = k1[r] * k1[r] + k2[c] * k2[c];
            inv_k_sq[i] = i == 0 ? 0.0 : 1.0 / k_sq[i];
            keep[i] = std::abs(g.row_index(r)) <= kc && c <= kc;
        }
    }
}

namespace {

void require_zero_mean(const SpectralField& omega, const char* who) {
    const double mean = std::abs(omega.data()[0]);
    if (mean > 1e-12 * std::max(omega.max_abs(), 1e-300) && mean != 0.0) {
        throw ValidationError(std::string(who) + ": vorticity has a nonzero mean mode");
    }
}

}  // namespace

std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega) {
    require_zero_mean(omega, "biot_savart");
    const Wavenumbers wn(omega.grid());
    SpectralField u1(omega.grid()), u2(omega.grid());
    const int hc = omega.grid().half_cols();
    for (int r = 0; r < omega.grid().n(); ++r) {
        for (int c = 0; c < hc; ++c) {
            const std::size_t i = std::size_t(r) * hc + c;
            const cplx w = omega.data()[i] * wn.inv_k_sq[i];
            u1.data()[i] = cplx(0.0, wn.k2[c]) * w;
            u2.data()[i] = cplx(0.0, -wn.k1[r]) * w;
        }
    }
    return {std::move(u1), std::move(u2)};
}

SpectralField rot(const SpectralField& u1, const SpectralField& u2) {
    if (!(u1.grid() == u2.grid())) throw ValidationError("rot: grid mismatch");
    const Wavenumbers wn(u1.grid());
    SpectralField out(u1.grid());
    const int hc = u1.grid().half_cols();
    for (int r = 0; r < u1.grid().n(); ++r) {
        for (int c = 0; c < hc; ++c) {
            const std::size_t i = std::size_t(r) * hc + c;
            out.data()[i] = cplx(0.0, wn.k1[r]) * u2.data()[i] - cplx(0.0, wn.k2[c]) * u1.data()[i];
        }
    }
    return out;
}

SpectralField stream_function(const SpectralField& omega) {
    const Wavenumbers wn(omega.grid());
    SpectralField psi(omega.grid());
    for (std::size_t i = 0; i < psi.data().size(); ++i) psi.data()[i] = -omega.data()[i] * wn.inv_k_sq[i];
    return psi;
}

SpectralField advect(const SpectralField& omega) {
    require_zero_mean(omega, "advect");
    if (!omega.is_dealiased()) throw ValidationError("advect: input is not dealiased");
    Advector adv(omega.grid());
    SpectralField out(omega.grid());
    adv.apply(omega, out);
    return out;
}

Advector::Advector(const GridSpec& grid) : wn_(grid), scratch_(grid.half_size()) {
    for (auto& s : spec_) s.assign(grid.half_size(), cplx{});
    for (auto& r : real_) r.assign(grid.real_size(), 0.0);
}

// u . grad(omega) = d1 d2 (u2^2 - u1^2) + (d1^2 - d2^2)(u1 u2) for
// divergence-free u: two inverse and two forward transforms per call.
double Advector::apply(const SpectralField& omega, SpectralField& out) {
    const GridSpec& g = wn_.grid;
    const int n = g.n();
    const int hc = g.half_cols();
    const cplx* w = omega.data().data();
    for (int r = 0; r < n; ++r) {
        const double a = wn_.k1[r];
        for (int c = 0; c < hc; ++c) {
            const std::size_t i = std::size_t(r) * hc + c;
            const cplx iw = cplx(-w[i].imag(), w[i].real()) * wn_.inv_k_sq[i];
            spec_[0][i] = wn_.k2[c] * iw;   // u1
            spec_[1][i] = -a * iw;          // u2
        }
    }
    const int kc = g.dealias_cutoff();
    fft::inverse_dealiased(n, kc, spec_[0].data(), scratch_.data(), real_[0].data());
    fft::inverse_dealiased(n, kc, spec_[1].data(), scratch_.data(), real_[1].data());

    double umax_sq = 0.0;
    double* u1 = real_[0].data();
    double* u2 = real_[1].data();
    const std::size_t size = g.real_size();
    for (std::size_t i = 0; i < size; ++i) {
        const double a = u1[i] * u1[i];
        const double b = u2[i] * u2[i];
        umax_sq = std::max(umax_sq, a + b);
        const double prod = u1[i] * u2[i];
        u1[i] = b - a;
        u2[i] = prod;
    }
    fft::forward_dealiased(n, kc, u1, spec_[2].data());
    fft::forward_dealiased(n, kc, u2, spec_[3].data());

    cplx* o = out.data().data();
    const cplx* diff = spec_[2].data();
    const cplx* prod = spec_[3].data();
    for (int r = 0; r < n; ++r) {
        const double a = wn_.k1[r];
        for (int c = 0; c < hc; ++c) {
            const std::size_t i = std::size_t(r) * hc + c;
            const double b = wn_.k2[c];
            o[i] = wn_.keep[i] ? -a * b * diff[i] + (b * b - a * a) * prod[i] : cplx{};
        }
    }
    o[0] = 0.0;
    return std::sqrt(umax_sq);
}

SpectralField resample(const SpectralField& field, const GridSpec& target) {
    if (field.grid().length() != target.length()) throw ValidationError("resample: domain length differs");
    SpectralField out(target);
    const int lim = std::min(field.grid().n(), target.n()) / 2 - 1;
    for (int j1 = -lim; j1 <= lim; ++j1) {
        for (int j2 = 0; j2 <= lim; ++j2) {
            out.at(target.row_of(j1), j2) = field.coeff(j1, j2);
        }
    }
    out.dealias();
    return out;
}

double inner(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("inner: grid mismatch");
    const GridSpec& g = a.grid();
    const int hc = g.half_cols();
    const int h = g.n() / 2;
    double sum = 0.0;
    for (int r = 0; r < g.n(); ++r) {
        for (int c = 0; c < hc; ++c) {
            const std::size_t i = std::size_t(r) * hc + c;
            const double weight = (c == 0 || c == h) ? 1.0 : 2.0;
            sum += weight * (a.data()[i] * std::conj(b.data()[i])).real();
        }
    }
    return g.area() * sum;
}

}  // namespace gvns
