#pragma once

#include <utility>
#include <vector>

#include "gvns/fft.hpp"
#include "gvns/field.hpp"

namespace gvns {

/// Physical wavenumber tables for the half-complex layout of a grid.
struct Wavenumbers {
    explicit Wavenumbers(const GridSpec& grid);

    GridSpec grid;
    std::vector<double> k1;       // per row
    std::vector<double> k2;       // per column
    std::vector<double> k_sq;     // per half-layout entry
    std::vector<double> inv_k_sq; // 0 at the mean mode
    std::vector<unsigned char> keep;  // 2/3-rule mask
};

/// Velocity u = grad^perp Laplacian^{-1} omega, i.e.
/// u_hat(k) = (i k2, -i k1) omega_hat(k) / |k|^2. Rejects a nonzero mean.
std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega);

/// Scalar curl d1 u2 - d2 u1.
SpectralField rot(const SpectralField& u1, const SpectralField& u2);

/// psi = Laplacian^{-1} omega (mean mode set to zero).
SpectralField stream_function(const SpectralField& omega);

/// Dealiased coefficients of u . grad(omega), with u from biot_savart.
/// Requires a zero-mean, dealiased input.
SpectralField advect(const SpectralField& omega);

/// Reusable workspace for the pseudo-spectral advection term: four inverse
/// transforms (u1, u2, d1 omega, d2 omega), a pointwise product and one
/// forward transform.
class Advector {
public:
    explicit Advector(const GridSpec& grid);

    /// Writes the dealiased, zero-mean advection term into `out` and returns
    /// the largest collocation speed |u|. No input validation.
    double apply(const SpectralField& omega, SpectralField& out);

    const Wavenumbers& wavenumbers() const noexcept { return wn_; }

private:
    Wavenumbers wn_;
    CoeffVector spec_[4];
    CoeffVector scratch_;
    RealVector real_[4];
};

/// Spectral interpolation onto another grid of the same period: modes
/// representable on both grids are copied, the result is dealiased.
SpectralField resample(const SpectralField& field, const GridSpec& target);

/// Real L2 inner product <a, b> = |Omega| sum_j a_j conj(b_j).
double inner(const SpectralField& a, const SpectralField& b);

}  // namespace gvns
