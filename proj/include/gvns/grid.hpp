#pragma once

#include <cmath>
#include <numbers>

namespace gvns {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Square periodic collocation grid on [0, L)^2.
///
/// Spectral arrays use the half-complex layout produced by a real-to-complex
/// FFT over a row-major n x n array: `n` rows (j1 in FFT order
/// 0..n/2-1, -n/2..-1) by `n/2 + 1` columns (j2 = 0..n/2). Negative j2 are
/// implied by Hermitian symmetry.
class GridSpec {
public:
    GridSpec() : GridSpec(8) {}
    explicit GridSpec(int n, double length = two_pi);

    int n() const noexcept { return n_; }
    double length() const noexcept { return length_; }

    /// Largest |j_i| kept by the 2/3 rule. Computed as floor((n-1)/3) so that
    /// the quadratic product of retained modes never aliases onto a retained
    /// mode; this equals floor(n/3) unless 3 divides n.
    int dealias_cutoff() const noexcept { return cutoff_; }

    int half_cols() const noexcept { return n_ / 2 + 1; }
    std::size_t half_size() const noexcept { return std::size_t(n_) * std::size_t(half_cols()); }
    std::size_t real_size() const noexcept { return std::size_t(n_) * std::size_t(n_); }

    double area() const noexcept { return length_ * length_; }
    double dx() const noexcept { return length_ / n_; }
    /// Physical wavenumber of integer index j.
    double k_unit() const noexcept { return two_pi / length_; }
    /// Smallest Stokes eigenvalue (2 pi / L)^2.
    double lambda1() const noexcept { return k_unit() * k_unit(); }

    /// Signed wave index of FFT-ordered row `r`.
    int row_index(int r) const noexcept { return r < n_ / 2 ? r : r - n_; }
    /// FFT-ordered row of signed index j1 in [-n/2, n/2).
    int row_of(int j1) const noexcept { return j1 >= 0 ? j1 : j1 + n_; }

    bool operator==(const GridSpec& o) const noexcept {
        return n_ == o.n_ && length_ == o.length_;
    }

private:
    int n_;
    double length_;
    int cutoff_;
};

}  // namespace gvns
