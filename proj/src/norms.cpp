#include "gvns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gvns/errors.hpp"
#include "gvns/fft.hpp"

namespace gvns {

NormSpec NormSpec::Lp(int p) {
    if (p < 2 || p % 2 != 0) throw ValidationError("norm: Lp requires an even p >= 2, got " + std::to_string(p));
    return {Kind::lp, p, 0.0, 0.5, 0.0};
}

NormSpec NormSpec::Sobolev(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("norm: Sobolev alpha must be finite and >= 0");
    return {Kind::sobolev, 0, 0.0, 0.5, alpha};
}

NormSpec NormSpec::Gevrey(double tau, double s, double alpha) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw ValidationError("norm: Gevrey tau must be finite and >= 0");
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("norm: Gevrey s must lie in (0, 1]");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("norm: Gevrey alpha must be finite and >= 0");
    return {Kind::gevrey, 0, tau, s, alpha};
}

int bandwidth(const SpectralField& field) {
    const GridSpec& g = field.grid();
    int band = 0;
    for (int r = 0; r < g.n(); ++r) {
        for (int c = 0; c < g.half_cols(); ++c) {
            if (field.at(r, c) != cplx{}) band = std::max({band, std::abs(g.row_index(r)), c});
        }
    }
    return band;
}

namespace {

double weighted_sum(const SpectralField& f, double tau, double s, double alpha) {
    const GridSpec& g = f.grid();
    const int hc = g.half_cols();
    const int h = g.n() / 2;
    double sum = 0.0;
    for (int r = 0; r < g.n(); ++r) {
        const double a = g.k_unit() * g.row_index(r);
        for (int c = 0; c < hc; ++c) {
            const double mag = std::abs(f.at(r, c));
            if (mag == 0.0) continue;
            const double b = g.k_unit() * c;
            const double k = std::sqrt(a * a + b * b);
            if (k == 0.0 && alpha > 0.0) continue;
            double log_w = 2.0 * std::log(mag);
            if (alpha > 0.0) log_w += 4.0 * alpha * std::log(k);
            if (tau > 0.0) log_w += 2.0 * tau * std::pow(k, 2.0 * s);
            const double term = std::exp(log_w);
            const double weight = (c == 0 || c == h) ? 1.0 : 2.0;
            sum += weight * term;
            if (!std::isfinite(sum)) {
                throw OverflowError("norm: Gevrey weight overflows at shell |k| = " + std::to_string(k), k);
            }
        }
    }
    return g.area() * sum;
}

int padded_size_for(const SpectralField& f, int p) {
    const int n = f.grid().n();
    return fft::fast_size(std::max({2 * n, p * bandwidth(f) + 1}));
}

}  // namespace

double norm(const SpectralField& field, const NormSpec& spec) {
    switch (spec.kind) {
        case NormSpec::Kind::l2:
            return std::sqrt(weighted_sum(field, 0.0, 0.5, 0.0));
        case NormSpec::Kind::sobolev:
            return std::sqrt(weighted_sum(field, 0.0, 0.5, spec.alpha));
        case NormSpec::Kind::gevrey:
            return std::sqrt(weighted_sum(field, spec.tau, spec.s, spec.alpha));
        case NormSpec::Kind::lp: {
            const int m = fft::fast_size(std::max(field.grid().n(), spec.p * bandwidth(field) + 1));
            const RealVector v = evaluate_padded(field, m);
            double sum = 0.0;
            for (double x : v) sum += std::pow(x * x, spec.p / 2);
            return std::pow(field.grid().area() * sum / (double(m) * m), 1.0 / spec.p);
        }
        case NormSpec::Kind::linf: {
            const RealVector v = evaluate_padded(field, fft::fast_size(2 * field.grid().n()));
            double mx = 0.0;
            for (double x : v) mx = std::max(mx, std::abs(x));
            return mx;
        }
    }
    return 0.0;
}

PhysicalNorms physical_norms(const SpectralField& field) {
    const int m = padded_size_for(field, 8);
    const RealVector v = evaluate_padded(field, m);
    double s2 = 0.0, s4 = 0.0, s8 = 0.0, mx = 0.0;
    for (double x : v) {
        const double x2 = x * x;
        const double x4 = x2 * x2;
        s2 += x2;
        s4 += x4;
        s8 += x4 * x4;
        mx = std::max(mx, std::abs(x));
    }
    const double w = field.grid().area() / (double(m) * m);
    return {std::sqrt(w * s2), std::pow(w * s4, 0.25), std::pow(w * s8, 0.125), mx};
}

std::vector<ShellValue> shell_spectrum(const SpectralField& omega) {
    const GridSpec& g = omega.grid();
    const int kc = g.dealias_cutoff();
    std::vector<double> best(kc + 1, 0.0);
    std::vector<unsigned char> seen(kc + 1, 0);
    for (int r = 0; r < g.n(); ++r) {
        const int j1 = g.row_index(r);
        for (int c = 0; c < g.half_cols(); ++c) {
            const double mod = std::sqrt(double(j1) * j1 + double(c) * c);
            // kappa - 1/2 < |j| <= kappa + 1/2  <=>  kappa = ceil(|j| - 1/2)
            const int kappa = int(std::ceil(mod - 0.5));
            if (kappa < 1 || kappa > kc) continue;
            seen[kappa] = 1;
            best[kappa] = std::max(best[kappa], std::abs(omega.at(r, c)));
        }
    }
    std::vector<ShellValue> out;
    for (int k = 1; k <= kc; ++k) {
        if (seen[k]) out.push_back({k, best[k]});
    }
    return out;
}

}  // namespace gvns
