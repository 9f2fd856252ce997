#include "gvns/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gvns/errors.hpp"

namespace gvns {

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.half_size(), cplx{}) {}

SpectralField SpectralField::from_full(const GridSpec& grid, std::span<const cplx> full) {
    const int n = grid.n();
    if (full.size() != grid.real_size()) {
        throw ValidationError("spectral field: expected " + std::to_string(grid.real_size()) +
                              " coefficients, got " + std::to_string(full.size()));
    }
    double scale = 0.0;
    for (const cplx& c : full) scale = std::max(scale, std::abs(c));
    double defect = 0.0;
    for (int r = 0; r < n; ++r) {
        const int rm = (n - r) % n;
        for (int c = 0; c < n; ++c) {
            const int cm = (n - c) % n;
            defect = std::max(defect, std::abs(full[std::size_t(r) * n + c] -
                                               std::conj(full[std::size_t(rm) * n + cm])));
        }
    }
    if (scale > 0.0 && defect > 1e-10 * scale) {
        throw ValidationError("spectral field: Hermitian symmetry violated (defect " +
                              std::to_string(defect / scale) + " relative)");
    }
    SpectralField out(grid);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < grid.half_cols(); ++c) out.at(r, c) = full[std::size_t(r) * n + c];
    }
    return out;
}

std::vector<cplx> SpectralField::to_full() const {
    const int n = grid_.n();
    std::vector<cplx> full(grid_.real_size());
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            full[std::size_t(r) * n + c] = coeff(grid_.row_index(r), c < n / 2 ? c : c - n);
        }
    }
    return full;
}

cplx SpectralField::coeff(int j1, int j2) const noexcept {
    const int n = grid_.n();
    if (j2 >= 0) return at(grid_.row_of(j1), j2);
    // -j2 <= n/2 is always stored; -j1 wraps for j1 = -n/2.
    const int mj1 = j1 == -n / 2 ? j1 : -j1;
    return std::conj(at(grid_.row_of(mj1), -j2));
}

void SpectralField::set_mode(int j1, int j2, cplx c) {
    const int n = grid_.n();
    const int h = n / 2;
    if (j1 < -h || j1 >= h || j2 < -h || j2 >= h) {
        throw ValidationError("spectral field: wave index (" + std::to_string(j1) + "," +
                              std::to_string(j2) + ") outside grid");
    }
    if ((j1 == 0 || j1 == -h) && (j2 == 0 || j2 == -h)) {
        // self-conjugate mode: only the real part survives
        at(grid_.row_of(j1), j2 == 0 ? 0 : h) = c.real();
        return;
    }
    if (j2 < 0 || (j2 == 0 && j1 < 0)) {
        j1 = j1 == -h ? j1 : -j1;
        j2 = -j2;
        c = std::conj(c);
    }
    if (j2 == h) {
        // column n/2 is its own mirror in j2
        at(grid_.row_of(j1), j2) = c;
        at(grid_.row_of(j1 == -h ? j1 : -j1), j2) = std::conj(c);
        return;
    }
    at(grid_.row_of(j1), j2) = c;
    if (j2 == 0) at(grid_.row_of(j1 == -h ? j1 : -j1), 0) = std::conj(c);
}

void SpectralField::add_mode(int j1, int j2, cplx c) {
    const int h = grid_.n() / 2;
    if (j1 < -h || j1 >= h || j2 < -h || j2 >= h) {
        throw ValidationError("spectral field: wave index (" + std::to_string(j1) + "," +
                              std::to_string(j2) + ") outside grid");
    }
    set_mode(j1, j2, coeff(j1, j2) + c);
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n();
    const double scale = max_abs();
    if (scale == 0.0) return 0.0;
    double defect = 0.0;
    for (int c : {0, n / 2}) {
        for (int r = 0; r < n; ++r) {
            const int rm = (n - r) % n;
            defect = std::max(defect, std::abs(at(r, c) - std::conj(at(rm, c))));
        }
    }
    return defect / scale;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool SpectralField::is_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

void SpectralField::dealias() noexcept {
    const int n = grid_.n();
    const int kc = grid_.dealias_cutoff();
    for (int r = 0; r < n; ++r) {
        const bool row_out = std::abs(grid_.row_index(r)) > kc;
        for (int c = 0; c < grid_.half_cols(); ++c) {
            if (row_out || c > kc) at(r, c) = 0.0;
        }
    }
}

bool SpectralField::is_dealiased() const noexcept {
    const int n = grid_.n();
    const int kc = grid_.dealias_cutoff();
    for (int r = 0; r < n; ++r) {
        const bool row_out = std::abs(grid_.row_index(r)) > kc;
        for (int c = 0; c < grid_.half_cols(); ++c) {
            if ((row_out || c > kc) && at(r, c) != cplx{}) return false;
        }
    }
    return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!(grid_ == o.grid_)) throw ValidationError("spectral field: grid mismatch in +=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!(grid_ == o.grid_)) throw ValidationError("spectral field: grid mismatch in -=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) noexcept {
    for (cplx& c : coeffs_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

}  // namespace gvns
