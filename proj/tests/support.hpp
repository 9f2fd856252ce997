#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gvns/field.hpp"
#include "gvns/solver.hpp"

namespace testing {

using gvns::cplx;

/// Direct O(n^4) DFT: c_j = n^-2 sum_x f(x) exp(-i k_j . x), full n x n in
/// FFT order.
inline std::vector<cplx> brute_forward(const gvns::PhysicalField& f) {
    const int n = f.grid().n();
    std::vector<cplx> out(std::size_t(n) * n);
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            const int j1 = f.grid().row_index(r), j2 = f.grid().row_index(s);
            cplx acc = 0.0;
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    const double ph = -gvns::two_pi * (double(j1) * a + double(j2) * b) / n;
                    acc += f(a, b) * std::polar(1.0, ph);
                }
            }
            out[std::size_t(r) * n + s] = acc / double(n * n);
        }
    }
    return out;
}

/// Direct trigonometric sum at the collocation points.
inline std::vector<double> brute_inverse(const gvns::SpectralField& g) {
    const int n = g.grid().n();
    const auto full = g.to_full();
    std::vector<double> out(std::size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            cplx acc = 0.0;
            for (int r = 0; r < n; ++r) {
                for (int s = 0; s < n; ++s) {
                    const int j1 = g.grid().row_index(r), j2 = g.grid().row_index(s);
                    const double ph = gvns::two_pi * (double(j1) * a + double(j2) * b) / n;
                    acc += full[std::size_t(r) * n + s] * std::polar(1.0, ph);
                }
            }
            out[std::size_t(a) * n + b] = acc.real();
        }
    }
    return out;
}

inline gvns::PhysicalField random_physical(const gvns::GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    gvns::PhysicalField f(g);
    for (double& v : f.values()) v = u(rng);
    return f;
}

/// Random zero-mean, dealiased vorticity.
inline gvns::SpectralField random_vorticity(const gvns::GridSpec& g, std::uint64_t seed, double amplitude = 1.0) {
    return gvns::initial_vorticity(gvns::init::Random{seed, 1.0, amplitude}, g);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace testing
