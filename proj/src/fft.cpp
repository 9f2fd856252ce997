#include "gvns/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "gvns/errors.hpp"

namespace gvns {
namespace fft {
namespace {

enum class Dir { r2c, c2r, rows_r2c, rows_c2r, cols_fwd, cols_bwd };

struct PlanKey {
    int n;
    int cutoff;
    Dir dir;
    auto operator<=>(const PlanKey&) const = default;
};

// Planning is not thread-safe in FFTW; execution through the new-array
// interface is, provided buffers share the alignment of the planning arrays.
fftw_plan plan_for(int n, Dir dir, int cutoff = 0) {
    static std::mutex mutex;
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard lock(mutex);
    const PlanKey key{n, cutoff, dir};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int hc = n / 2 + 1;
    RealVector real(std::size_t(n) * n);
    CoeffVector spec(std::size_t(n) * hc);
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    int len[] = {n};
    fftw_plan p = nullptr;
    switch (dir) {
        case Dir::r2c:
            p = fftw_plan_dft_r2c_2d(n, n, real.data(), c, FFTW_ESTIMATE);
            break;
        case Dir::c2r:
            p = fftw_plan_dft_c2r_2d(n, n, c, real.data(), FFTW_ESTIMATE);
            break;
        case Dir::rows_r2c:
            p = fftw_plan_many_dft_r2c(1, len, n, real.data(), nullptr, 1, n, c, nullptr, 1, hc, FFTW_ESTIMATE);
            break;
        case Dir::rows_c2r:
            p = fftw_plan_many_dft_c2r(1, len, n, c, nullptr, 1, hc, real.data(), nullptr, 1, n, FFTW_ESTIMATE);
            break;
        case Dir::cols_fwd:
        case Dir::cols_bwd:
            p = fftw_plan_many_dft(1, len, cutoff + 1, c, nullptr, hc, 1, c, nullptr, hc, 1,
                                   dir == Dir::cols_fwd ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
            break;
    }
    cache.emplace(key, p);
    return p;
}

}  // namespace

void forward(int n, const double* in, cplx* out) {
    fftw_execute_dft_r2c(plan_for(n, Dir::r2c), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / (double(n) * n);
    const std::size_t size = std::size_t(n) * (n / 2 + 1);
    for (std::size_t i = 0; i < size; ++i) out[i] *= scale;
}

void inverse(int n, const cplx* in, cplx* scratch, double* out) {
    const std::size_t size = std::size_t(n) * (n / 2 + 1);
    std::copy(in, in + size, scratch);
    fftw_execute_dft_c2r(plan_for(n, Dir::c2r), reinterpret_cast<fftw_complex*>(scratch), out);
}

void forward_dealiased(int n, int cutoff, const double* in, cplx* out) {
    auto* o = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft_r2c(plan_for(n, Dir::rows_r2c), const_cast<double*>(in), o);
    fftw_execute_dft(plan_for(n, Dir::cols_fwd, cutoff), o, o);
    const double scale = 1.0 / (double(n) * n);
    const std::size_t size = std::size_t(n) * (n / 2 + 1);
    for (std::size_t i = 0; i < size; ++i) out[i] *= scale;
}

void inverse_dealiased(int n, int cutoff, const cplx* in, cplx* scratch, double* out) {
    const std::size_t size = std::size_t(n) * (n / 2 + 1);
    std::copy(in, in + size, scratch);
    auto* s = reinterpret_cast<fftw_complex*>(scratch);
    fftw_execute_dft(plan_for(n, Dir::cols_bwd, cutoff), s, s);
    fftw_execute_dft_c2r(plan_for(n, Dir::rows_c2r), s, out);
}

int fast_size(int m) {
    for (int s = std::max(m, 2);; ++s) {
        if (s % 2 != 0) continue;
        int r = s;
        for (int f : {2, 3, 5}) {
            while (r % f == 0) r /= f;
        }
        if (r == 1) return s;
    }
}

}  // namespace fft

SpectralField to_spectral(const PhysicalField& f) {
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw ValidationError("to_spectral: non-finite sample in input field");
    }
    SpectralField out(f.grid());
    fft::forward(f.grid().n(), f.values().data(), out.data().data());
    return out;
}

PhysicalField to_physical(const SpectralField& g) {
    const double defect = g.hermitian_defect();
    if (defect > 1e-10) {
        throw ValidationError("to_physical: Hermitian symmetry violated (defect " +
                              std::to_string(defect) + " relative)");
    }
    PhysicalField out(g.grid());
    CoeffVector scratch(g.grid().half_size());
    fft::inverse(g.grid().n(), g.data().data(), scratch.data(), out.values().data());
    return out;
}

RealVector evaluate_padded(const SpectralField& g, int m) {
    const GridSpec& grid = g.grid();
    const int n = grid.n();
    if (m < n || m % 2 != 0) throw ValidationError("evaluate_padded: size must be even and >= n");
    const int h = n / 2;
    const int mh = m / 2 + 1;
    CoeffVector padded(std::size_t(m) * mh, cplx{});
    auto put = [&](int j1, int j2, cplx c) {
        const int row = j1 >= 0 ? j1 : j1 + m;
        padded[std::size_t(row) * mh + j2] += c;
    };
    for (int r = 0; r < n; ++r) {
        const int j1 = grid.row_index(r);
        for (int c = 0; c < grid.half_cols(); ++c) {
            cplx v = g.at(r, c);
            if (v == cplx{}) continue;
            if (m > n && c == h) v *= 0.5;
            if (m > n && j1 == -h) {
                put(-h, c, 0.5 * v);
                put(h, c, 0.5 * v);
            } else {
                put(j1, c, v);
            }
        }
    }
    RealVector out(std::size_t(m) * m);
    CoeffVector scratch(padded.size());
    fft::inverse(m, padded.data(), scratch.data(), out.data());
    return out;
}

}  // namespace gvns
