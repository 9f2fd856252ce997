#pragma once

#include <optional>
#include <vector>

#include "gvns/field.hpp"

namespace gvns {

/// Which norm to evaluate. Spectral kinds use physical wavenumbers |k|:
///   Sobolev(alpha):        (|Omega| sum |k|^{4 alpha} |c_k|^2)^{1/2}
///   Gevrey(tau, s, alpha): (|Omega| sum |k|^{4 alpha} e^{2 tau |k|^{2s}} |c_k|^2)^{1/2}
/// so alpha = 1/2 corresponds to A^{1/2}. Lp is limited to even p.
struct NormSpec {
    enum class Kind { l2, lp, linf, sobolev, gevrey };

    Kind kind = Kind::l2;
    int p = 2;
    double tau = 0.0;
    double s = 0.5;
    double alpha = 0.0;

    static NormSpec L2() { return {}; }
    static NormSpec Lp(int p);
    static NormSpec Linf() { return {Kind::linf, 0, 0.0, 0.5, 0.0}; }
    static NormSpec Sobolev(double alpha);
    static NormSpec Gevrey(double tau, double s, double alpha);
};

/// Lp and L-infinity are evaluated on a zero-padded collocation grid: Lp on
/// one fine enough that the trapezoid rule is exact for f^p, L-infinity on
/// one at least twice as fine as the field's own grid. Gevrey weights that
/// leave the double range raise OverflowError naming the shell |k|.
double norm(const SpectralField& field, const NormSpec& spec);

/// L2, L4, L8 and L-infinity from a single padded evaluation.
struct PhysicalNorms {
    double l2 = 0.0;
    double l4 = 0.0;
    double l8 = 0.0;
    double linf = 0.0;
};
PhysicalNorms physical_norms(const SpectralField& field);

/// Largest |j_i| carrying a nonzero coefficient.
int bandwidth(const SpectralField& field);

struct ShellValue {
    int kappa = 0;
    double value = 0.0;
};

/// Max |c_j| over each integer shell kappa - 1/2 < |j| <= kappa + 1/2 for
/// kappa = 1..dealias_cutoff, in index units. Shells without lattice points
/// are omitted.
std::vector<ShellValue> shell_spectrum(const SpectralField& omega);

}  // namespace gvns
