#include "gvns/solver.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gvns/errors.hpp"
#include "gvns/norms.hpp"

namespace gvns {

void PhysParams::validate(bool require_positive) const {
    if (!std::isfinite(nu) || !std::isfinite(mu) || nu < 0.0 || mu < 0.0) {
        throw ValidationError("params: nu and mu must be finite and non-negative");
    }
    if (require_positive && (nu <= 0.0 || mu <= 0.0)) {
        throw ValidationError("params: nu and mu must be positive");
    }
}

SpectralField build_forcing(const ForcingSpec& spec, const GridSpec& grid) {
    SpectralField f(grid);
    const int kc = grid.dealias_cutoff();
    for (const ForcingMode& m : spec.modes) {
        const std::string name = "(" + std::to_string(m.k[0]) + "," + std::to_string(m.k[1]) + ")";
        if (m.k[0] == 0 && m.k[1] == 0) throw ValidationError("forcing: zero wave-vector " + name);
        if (std::abs(m.k[0]) > kc || std::abs(m.k[1]) > kc) {
            throw ValidationError("forcing: mode " + name + " exceeds dealias cutoff " + std::to_string(kc));
        }
        if (!std::isfinite(m.amplitude) || !std::isfinite(m.phase)) {
            throw ValidationError("forcing: non-finite amplitude or phase for mode " + name);
        }
        f.add_mode(m.k[0], m.k[1], 0.5 * m.amplitude * std::polar(1.0, m.phase));
    }
    return f;
}

SpectralField initial_vorticity(const InitialCondition& ic, const GridSpec& grid) {
    SpectralField omega(grid);
    if (const auto* sm = std::get_if<init::SingleMode>(&ic)) {
        const int kc = grid.dealias_cutoff();
        if ((sm->k[0] == 0 && sm->k[1] == 0) || std::abs(sm->k[0]) > kc || std::abs(sm->k[1]) > kc) {
            throw ValidationError("initial: single mode must be nonzero and inside the dealias cutoff");
        }
        omega.set_mode(sm->k[0], sm->k[1], 0.5 * sm->amplitude);
    } else if (const auto* rnd = std::get_if<init::Random>(&ic)) {
        std::mt19937_64 rng(rnd->seed);
        auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
        const int kc = grid.dealias_cutoff();
        for (int r = 0; r < grid.n(); ++r) {
            const int j1 = grid.row_index(r);
            if (std::abs(j1) > kc) continue;
            for (int c = 0; c <= kc; ++c) {
                if (c == 0 && j1 <= 0) continue;
                const double mod = std::sqrt(double(j1) * j1 + double(c) * c);
                const double amp = std::pow(mod, rnd->slope) * std::exp(-mod);
                const double phase = two_pi * uniform();
                omega.set_mode(j1, c, std::polar(amp, phase));
            }
        }
        const double rms = norm(omega, NormSpec::L2()) / std::sqrt(grid.area());
        if (rms > 0.0) omega *= rnd->amplitude / rms;
    }
    return omega;
}

double SimConfig::spinup_time() const {
    if (spinup) return *spinup;
    return params.mu > 0.0 ? 10.0 / params.mu : 0.0;
}

void SimConfig::validate() const {
    params.validate(false);
    if (dt && !(*dt > 0.0 && std::isfinite(*dt))) throw ValidationError("config: dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("config: t_end must be positive");
    if (spinup && !(*spinup >= 0.0)) throw ValidationError("config: spinup must be non-negative");
    if (sample_every < 1) throw ValidationError("config: sample_every must be >= 1");
    if (checkpoint_every < 0) throw ValidationError("config: checkpoint_every must be >= 0");
    if (!(sigma1 > 0.0)) throw ValidationError("config: sigma1 must be positive");
    build_forcing(forcing, grid);
}

Stepper::Stepper(const GridSpec& grid, const PhysParams& params, const SpectralField& forcing)
    : grid_(grid),
      params_(params),
      forcing_(forcing),
      equilibrium_(grid),
      explicit_force_(grid),
      advector_(grid),
      decay_rate_(grid.half_size()),
      e_full_(grid.half_size()),
      e_half_(grid.half_size()),
      e_back_half_(grid.half_size()),
      w0_(grid),
      w_(grid),
      stage_(grid),
      n_(grid) {
    params.validate(false);
    if (!(forcing.grid() == grid)) throw ValidationError("stepper: forcing grid mismatch");
    const Wavenumbers& wn = advector_.wavenumbers();
    for (std::size_t i = 0; i < grid.half_size(); ++i) {
        decay_rate_[i] = params.nu * wn.k_sq[i] + params.mu;
        const cplx f = wn.keep[i] ? forcing.data()[i] : cplx{};
        if (i == 0) continue;
        if (decay_rate_[i] > 0.0) {
            equilibrium_.data()[i] = f / decay_rate_[i];
        } else {
            explicit_force_.data()[i] = f;
        }
    }
}

double Stepper::cfl_dt(double umax) const noexcept { return 0.5 * grid_.dx() / std::max(1.0, umax); }

double Stepper::max_speed(const SpectralField& omega) {
    SpectralField scratch(grid_);
    return advector_.apply(omega, scratch);
}

void Stepper::refresh_factors(double dt) {
    if (dt == factor_dt_) return;
    for (std::size_t i = 0; i < decay_rate_.size(); ++i) {
        const double a = decay_rate_[i] * dt;
        e_full_[i] = std::exp(-a);
        e_half_[i] = std::exp(-0.5 * a);
        e_back_half_[i] = std::exp(0.5 * a);
    }
    factor_dt_ = dt;
}

void Stepper::rhs(const SpectralField& omega, SpectralField& out, double* umax) {
    const double u = advector_.apply(omega, out);
    if (umax) *umax = u;
    cplx* o = out.data().data();
    const cplx* f = explicit_force_.data().data();
    for (std::size_t i = 0; i < grid_.half_size(); ++i) o[i] = f[i] - o[i];
}

void Stepper::step(State& state, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("step: dt must be positive");
    refresh_factors(dt);
    const std::size_t size = grid_.half_size();
    const cplx* eq = equilibrium_.data().data();
    cplx* w0 = w0_.data().data();
    cplx* w = w_.data().data();
    cplx* st = stage_.data().data();
    cplx* nn = n_.data().data();
    const double* ef = e_full_.data();
    const double* eh = e_half_.data();
    const double* eb = e_back_half_.data();

    const cplx* om = state.omega.data().data();
    for (std::size_t i = 0; i < size; ++i) w0[i] = om[i] - eq[i];

    rhs(state.omega, n_, &last_umax_);
    for (std::size_t i = 0; i < size; ++i) {
        w[i] = ef[i] * (w0[i] + dt * nn[i]);
        st[i] = w[i] + eq[i];
    }
    rhs(stage_, n_, nullptr);
    for (std::size_t i = 0; i < size; ++i) {
        w[i] = 0.75 * eh[i] * w0[i] + 0.25 * eb[i] * (w[i] + dt * nn[i]);
        st[i] = w[i] + eq[i];
    }
    rhs(stage_, n_, nullptr);
    for (std::size_t i = 0; i < size; ++i) {
        w[i] = (1.0 / 3.0) * ef[i] * w0[i] + (2.0 / 3.0) * eh[i] * (w[i] + dt * nn[i]);
        st[i] = w[i] + eq[i];
    }
    if (!stage_.is_finite()) {
        throw BlowupError("step: non-finite vorticity after t = " + std::to_string(state.t), state.t);
    }
    std::swap(state.omega, stage_);
    if (!(stage_.grid() == grid_)) stage_ = SpectralField(grid_);
    state.t += dt;
}

State step(const State& state, double dt, const PhysParams& params, const SpectralField& forcing) {
    Stepper stepper(state.omega.grid(), params, forcing);
    State next = state;
    stepper.step(next, dt);
    return next;
}

}  // namespace gvns
