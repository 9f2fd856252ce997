#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gvns/field.hpp"
#include "gvns/spectral.hpp"

namespace gvns {

/// Viscosity and linear (Rayleigh) damping rate. The solver accepts zero
/// for either; driven studies require both positive.
struct PhysParams {
    double nu = 0.0;
    double mu = 0.0;

    void validate(bool require_positive = true) const;
};

/// F = sum amplitude * cos(k . x + phase), k in index units.
struct ForcingMode {
    std::array<int, 2> k{0, 0};
    double amplitude = 0.0;
    double phase = 0.0;
};

struct ForcingSpec {
    std::vector<ForcingMode> modes;
};

/// Builds F_hat. Rejects zero wave-vectors and modes beyond the dealias
/// cutoff, naming the offending mode.
SpectralField build_forcing(const ForcingSpec& spec, const GridSpec& grid);

struct State {
    double t = 0.0;
    SpectralField omega;
};

namespace init {
struct Zero {};
struct SingleMode {
    std::array<int, 2> k{1, 0};
    double amplitude = 1.0;
};
/// |omega_j| proportional to |j|^slope e^{-|j|} with uniform random phases,
/// rescaled to an rms vorticity of `amplitude`.
struct Random {
    std::uint64_t seed = 0;
    double slope = 2.0;
    double amplitude = 1.0;
};
}  // namespace init

using InitialCondition = std::variant<init::Zero, init::SingleMode, init::Random>;

SpectralField initial_vorticity(const InitialCondition& ic, const GridSpec& grid);

struct SimConfig {
    GridSpec grid;
    PhysParams params;
    ForcingSpec forcing;
    std::optional<double> dt;         // empty = auto (advective CFL 0.5)
    double t_end = 1.0;
    std::optional<double> spinup;     // empty = 10 / mu
    int sample_every = 10;
    InitialCondition initial = init::Zero{};
    int checkpoint_every = 0;         // 0 = no checkpoints
    double sigma1 = 1.0;              // Gevrey radius of the forcing for phi(t)

    double spinup_time() const;
    void validate() const;
};

/// Integrating-factor SSP-RK3 for
///   d omega/dt + u . grad omega = nu Laplacian omega - mu omega + F.
///
/// The affine linear part is removed exactly per mode: with
/// lambda_k = nu |k|^2 + mu and the forced linear equilibrium
/// omega_s = F / lambda_k, the deviation w = omega - omega_s obeys
/// w' = -lambda w - N(omega), and the factor e^{-lambda dt} is applied
/// exactly. Modes with lambda_k = 0 take their forcing explicitly.
class Stepper {
public:
    Stepper(const GridSpec& grid, const PhysParams& params, const SpectralField& forcing);

    /// Advances `state` by dt. Throws BlowupError (state left unchanged) on
    /// non-finite output.
    void step(State& state, double dt);

    /// Largest collocation speed seen in the first stage of the last step.
    double last_umax() const noexcept { return last_umax_; }

    /// Speed of `omega` on the collocation grid.
    double max_speed(const SpectralField& omega);

    const GridSpec& grid() const noexcept { return grid_; }
    const PhysParams& params() const noexcept { return params_; }
    const SpectralField& forcing() const noexcept { return forcing_; }

    /// Advective CFL step 0.5 dx / max(1, umax).
    double cfl_dt(double umax) const noexcept;

private:
    void refresh_factors(double dt);
    void rhs(const SpectralField& omega, SpectralField& out, double* umax);

    GridSpec grid_;
    PhysParams params_;
    SpectralField forcing_;
    SpectralField equilibrium_;   // omega_s
    SpectralField explicit_force_;
    Advector advector_;
    std::vector<double> decay_rate_;
    double factor_dt_ = -1.0;
    std::vector<double> e_full_, e_half_, e_back_half_;
    SpectralField w0_, w_, stage_, n_;
    double last_umax_ = 0.0;
};

/// One step from a fresh stepper.
State step(const State& state, double dt, const PhysParams& params, const SpectralField& forcing);

}  // namespace gvns
