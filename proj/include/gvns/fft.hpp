#pragma once

#include <span>

#include "gvns/field.hpp"

namespace gvns {

/// Forward transform: c_j = n^{-2} sum_x f(x) exp(-i k_j . x). The mean
/// lands in c_0; callers working with vorticity project it away.
/// Throws ValidationError on non-finite samples.
SpectralField to_spectral(const PhysicalField& f);

/// Inverse transform f(x) = sum_j c_j exp(i k_j . x). Rejects inputs whose
/// Hermitian defect exceeds 1e-10 relative.
PhysicalField to_physical(const SpectralField& g);

/// Evaluates the trigonometric polynomial of `g` on an m x m grid (m >= n,
/// m even) by zero padding. Nyquist content is split symmetrically.
RealVector evaluate_padded(const SpectralField& g, int m);

namespace fft {

/// Unchecked kernels over raw aligned buffers of an n x n grid. `forward`
/// leaves `in` intact and applies the 1/n^2 factor; `inverse` overwrites
/// `scratch` (n x (n/2+1)) and writes `out`.
void forward(int n, const double* in, cplx* out);
void inverse(int n, const cplx* in, cplx* scratch, double* out);

/// Same transforms for fields whose modes beyond `cutoff` in either index
/// vanish; the column pass skips the zero columns. `forward_dealiased`
/// only produces valid coefficients in columns 0..cutoff.
void forward_dealiased(int n, int cutoff, const double* in, cplx* out);
void inverse_dealiased(int n, int cutoff, const cplx* in, cplx* scratch, double* out);

/// Smallest size >= m of the form 2^a 3^b 5^c that is even.
int fast_size(int m);

}  // namespace fft
}  // namespace gvns
