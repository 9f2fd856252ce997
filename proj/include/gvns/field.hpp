#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include <fftw3.h>

#include "gvns/grid.hpp"

namespace gvns {

using cplx = std::complex<double>;

/// Allocator handing out SIMD-aligned storage so every FFT executes the
/// same codelets regardless of which buffer it is applied to.
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() noexcept = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t count) {
        void* p = fftw_malloc(count * sizeof(T));
        if (p == nullptr) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

    template <class U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using CoeffVector = std::vector<cplx, FftwAllocator<cplx>>;
using RealVector = std::vector<double, FftwAllocator<double>>;

/// Fourier coefficients of a real field, f(x) = sum_j c_j exp(i k_j . x)
/// with k_j = (2 pi / L) j. Stored in half-complex layout (see GridSpec).
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);

    /// Builds from a full n x n array in FFT order (j1 slow, j2 fast).
    /// Rejects inputs whose Hermitian defect exceeds 1e-10 relative.
    static SpectralField from_full(const GridSpec& grid, std::span<const cplx> full);
    std::vector<cplx> to_full() const;

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<cplx> data() noexcept { return coeffs_; }
    std::span<const cplx> data() const noexcept { return coeffs_; }

    cplx& at(int row, int col) noexcept { return coeffs_[std::size_t(row) * grid_.half_cols() + col]; }
    const cplx& at(int row, int col) const noexcept {
        return coeffs_[std::size_t(row) * grid_.half_cols() + col];
    }

    /// Coefficient of any signed wave index in [-n/2, n/2)^2.
    cplx coeff(int j1, int j2) const noexcept;
    /// Writes c at j and conj(c) at -j.
    void set_mode(int j1, int j2, cplx c);
    void add_mode(int j1, int j2, cplx c);

    /// Largest |c_j - conj(c_{-j})| relative to the largest coefficient.
    double hermitian_defect() const;
    double max_abs() const;
    bool is_finite() const;

    void zero_mean() noexcept { coeffs_[0] = 0.0; }
    /// Zeroes every mode with max(|j1|, |j2|) > dealias_cutoff.
    void dealias() noexcept;
    bool is_dealiased() const noexcept;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s) noexcept;

private:
    GridSpec grid_;
    CoeffVector coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Collocation values at x = (L/n)(i1, i2), row-major with i2 fastest.
class PhysicalField {
public:
    PhysicalField() = default;
    explicit PhysicalField(const GridSpec& grid) : grid_(grid), values_(grid.real_size(), 0.0) {}

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    double& operator()(int i1, int i2) noexcept { return values_[std::size_t(i1) * grid_.n() + i2]; }
    double operator()(int i1, int i2) const noexcept { return values_[std::size_t(i1) * grid_.n() + i2]; }

    /// Physical coordinates of sample (i1, i2).
    double x1(int i1) const noexcept { return grid_.dx() * i1; }
    double x2(int i2) const noexcept { return grid_.dx() * i2; }

private:
    GridSpec grid_;
    RealVector values_;
};

}  // namespace gvns
