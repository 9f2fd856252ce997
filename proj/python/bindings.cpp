#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "gvns/bounds.hpp"
#include "gvns/checkpoint.hpp"
#include "gvns/config.hpp"
#include "gvns/diagnostics.hpp"
#include "gvns/errors.hpp"
#include "gvns/experiments.hpp"
#include "gvns/fft.hpp"
#include "gvns/norms.hpp"
#include "gvns/run.hpp"
#include "gvns/solver.hpp"
#include "gvns/spectral.hpp"

namespace py = pybind11;
using namespace gvns;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

int square_side(const py::buffer_info& info, const char* what) {
    if (info.ndim != 2 || info.shape[0] != info.shape[1]) {
        throw ValidationError(std::string(what) + ": expected a square 2-d array");
    }
    return int(info.shape[0]);
}

SpectralField field_from(const CArray& a, double length) {
    const auto info = a.request();
    const int n = square_side(info, "coefficients");
    const GridSpec grid(n, length);
    const auto* p = static_cast<const cplx*>(info.ptr);
    return SpectralField::from_full(grid, std::span<const cplx>(p, grid.real_size()));
}

py::array_t<cplx> array_from(const SpectralField& f) {
    const int n = f.grid().n();
    py::array_t<cplx> out({n, n});
    const std::vector<cplx> full = f.to_full();
    std::copy(full.begin(), full.end(), out.mutable_data());
    return out;
}

ForcingSpec forcing_from(const py::sequence& modes) {
    ForcingSpec spec;
    for (const py::handle h : modes) {
        const auto m = h.cast<py::sequence>();
        if (m.size() < 3 || m.size() > 4) throw ValidationError("forcing mode must be (k1, k2, amplitude[, phase])");
        ForcingMode fm;
        fm.k = {m[0].cast<int>(), m[1].cast<int>()};
        fm.amplitude = m[2].cast<double>();
        if (m.size() == 4) fm.phase = m[3].cast<double>();
        spec.modes.push_back(fm);
    }
    return spec;
}

py::object to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json record_json(const DiagnosticsRecord& r) {
    nlohmann::json j = {{"t", r.t},
                        {"energy", r.energy},
                        {"enstrophy", r.enstrophy},
                        {"l2", r.lp.l2},
                        {"l4", r.lp.l4},
                        {"l8", r.lp.l8},
                        {"linf", r.lp.linf},
                        {"budget_residual", r.budget_residual},
                        {"resolution_ratio", r.resolution_ratio}};
    j["gevrey_half"] = r.gevrey_half ? nlohmann::json(*r.gevrey_half) : nlohmann::json(nullptr);
    if (r.radius) {
        j["la"] = r.radius->l_a;
        j["r2"] = r.radius->r2;
        j["accepted"] = r.radius->accepted;
    } else {
        j["la"] = nullptr;
        j["r2"] = nullptr;
        j["accepted"] = false;
    }
    return j;
}

nlohmann::json radius_json(const RadiusEstimate& e) {
    return {{"la", e.l_a},         {"intercept", e.intercept}, {"r2", e.r2},
            {"kappa_lo", e.kappa_lo}, {"kappa_hi", e.kappa_hi}, {"shells", e.shells},
            {"accepted", e.accepted}};
}

NormSpec norm_spec(const std::string& kind, int p, double tau, double s, double alpha) {
    if (kind == "l2") return NormSpec::L2();
    if (kind == "lp") return NormSpec::Lp(p);
    if (kind == "linf") return NormSpec::Linf();
    if (kind == "sobolev") return NormSpec::Sobolev(alpha);
    if (kind == "gevrey") return NormSpec::Gevrey(tau, s, alpha);
    throw ValidationError("unknown norm kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_gvns, m) {
    m.doc() = "Damped-driven 2D Navier-Stokes spectral solver";

    static py::exception<Error> base(m, "GvnsError", PyExc_RuntimeError);
    static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
    static py::exception<CheckpointError> checkpoint(m, "CheckpointError", base.ptr());
    static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const CheckpointError& e) {
            py::set_error(checkpoint, e.what());
        } catch (const ConfigError& e) {
            py::set_error(config, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def("dealias_cutoff", [](int n) { return GridSpec(n).dealias_cutoff(); }, py::arg("n"));

    m.def(
        "to_spectral",
        [](const RArray& values, double length) {
            const auto info = values.request();
            const int n = square_side(info, "values");
            PhysicalField f{GridSpec(n, length)};
            const auto* p = static_cast<const double*>(info.ptr);
            std::copy(p, p + f.values().size(), f.values().begin());
            return array_from(to_spectral(f));
        },
        py::arg("values"), py::arg("length") = two_pi,
        "Fourier coefficients of collocation values, full n x n in FFT order.");

    m.def(
        "to_physical",
        [](const CArray& coeffs, double length) {
            const PhysicalField f = to_physical(field_from(coeffs, length));
            const int n = f.grid().n();
            py::array_t<double> out({n, n});
            std::copy(f.values().begin(), f.values().end(), out.mutable_data());
            return out;
        },
        py::arg("coeffs"), py::arg("length") = two_pi);

    m.def(
        "velocity",
        [](const CArray& coeffs, double length) {
            auto [u1, u2] = biot_savart(field_from(coeffs, length));
            return py::make_tuple(array_from(u1), array_from(u2));
        },
        py::arg("coeffs"), py::arg("length") = two_pi);

    m.def(
        "advect",
        [](const CArray& coeffs, double length) { return array_from(advect(field_from(coeffs, length))); },
        py::arg("coeffs"), py::arg("length") = two_pi, "Dealiased coefficients of u . grad omega.");

    m.def(
        "norm",
        [](const CArray& coeffs, const std::string& kind, int p, double tau, double s, double alpha, double length) {
            return norm(field_from(coeffs, length), norm_spec(kind, p, tau, s, alpha));
        },
        py::arg("coeffs"), py::arg("kind") = "l2", py::arg("p") = 2, py::arg("tau") = 0.0, py::arg("s") = 0.5,
        py::arg("alpha") = 0.0, py::arg("length") = two_pi);

    m.def(
        "shell_spectrum",
        [](const CArray& coeffs, double length) {
            std::vector<std::pair<int, double>> out;
            for (const ShellValue& v : shell_spectrum(field_from(coeffs, length))) out.emplace_back(v.kappa, v.value);
            return out;
        },
        py::arg("coeffs"), py::arg("length") = two_pi);

    m.def(
        "estimate_radius",
        [](const std::vector<std::pair<int, double>>& spectrum, double length, int cutoff) {
            std::vector<ShellValue> s;
            for (const auto& [k, v] : spectrum) s.push_back({k, v});
            RadiusOptions opts;
            opts.length = length;
            opts.cutoff = cutoff;
            return to_py(radius_json(estimate_radius(s, opts)));
        },
        py::arg("spectrum"), py::arg("length") = two_pi, py::arg("cutoff") = 0);

    m.def(
        "forcing",
        [](int n, const py::sequence& modes, double length) {
            return array_from(build_forcing(forcing_from(modes), GridSpec(n, length)));
        },
        py::arg("n"), py::arg("modes"), py::arg("length") = two_pi);

    m.def(
        "step",
        [](const CArray& coeffs, double t, double dt, double nu, double mu, const py::sequence& modes,
           double length) {
            State s{t, field_from(coeffs, length)};
            const SpectralField f = build_forcing(forcing_from(modes), s.omega.grid());
            s = step(s, dt, PhysParams{nu, mu}, f);
            return py::make_tuple(array_from(s.omega), s.t);
        },
        py::arg("coeffs"), py::arg("t"), py::arg("dt"), py::arg("nu"), py::arg("mu"), py::arg("modes"),
        py::arg("length") = two_pi, "One integrating-factor RK3 step.");

    m.def(
        "simulate",
        [](const std::string& config_text) {
            const Config cfg = parse_config(config_text);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(cfg.sim);
            }
            nlohmann::json records = nlohmann::json::array();
            for (const auto& rec : r.records) records.push_back(record_json(rec));
            py::dict out;
            out["records"] = to_py(records);
            out["summary"] = to_py(to_json(r.summary));
            out["steps"] = r.steps;
            out["t"] = r.final_state.t;
            out["blowup"] = r.blowup;
            out["message"] = r.message;
            out["omega"] = array_from(r.final_state.omega);
            return out;
        },
        py::arg("config_text"), "Runs a simulation described by config text.");

    m.def(
        "dimensionless",
        [](double nu, double mu, const py::sequence& modes, int n, double length, double sigma1) {
            return to_py(to_json(dimensionless(PhysParams{nu, mu}, forcing_from(modes), GridSpec(n, length), sigma1)));
        },
        py::arg("nu"), py::arg("mu"), py::arg("modes"), py::arg("n") = 64, py::arg("length") = two_pi,
        py::arg("sigma1") = 1.0);

    m.def(
        "bounds",
        [](double nu, double mu, const py::sequence& modes, int n, double length, double sigma1) {
            const GridSpec grid(n, length);
            const Dimensionless d = dimensionless(PhysParams{nu, mu}, forcing_from(modes), grid, sigma1);
            return to_py(to_json(all_bounds(d, grid.area(), sigma1)));
        },
        py::arg("nu"), py::arg("mu"), py::arg("modes"), py::arg("n") = 64, py::arg("length") = two_pi,
        py::arg("sigma1") = 1.0);

    m.def("la_thm32", &la_thm32, py::arg("D"), py::arg("area"), py::arg("C") = 1.0);

    m.def(
        "fit_scaling",
        [](const std::vector<std::pair<double, double>>& pairs) {
            const ScalingFit f = fit_scaling(pairs);
            py::dict out;
            out["exponent"] = f.exponent;
            out["stderr"] = f.stderr_;
            out["intercept"] = f.intercept;
            return out;
        },
        py::arg("pairs"), "Least squares of log y against log x.");

    m.def(
        "count_modes", [](int n, int kappa) { return count_modes(GridSpec(n), kappa); }, py::arg("n"),
        py::arg("kappa"));

    m.def(
        "save_checkpoint",
        [](const CArray& coeffs, double t, double nu, double mu, double length) {
            const std::vector<std::uint8_t> b =
                save_checkpoint(State{t, field_from(coeffs, length)}, PhysParams{nu, mu});
            return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
        },
        py::arg("coeffs"), py::arg("t"), py::arg("nu"), py::arg("mu"), py::arg("length") = two_pi);

    m.def(
        "load_checkpoint",
        [](const py::bytes& data) {
            const std::string s = data;
            const std::vector<std::uint8_t> b(s.begin(), s.end());
            auto [state, header] = load_checkpoint(b);
            py::dict out;
            out["n"] = header.n;
            out["length"] = header.length;
            out["t"] = header.t;
            out["nu"] = header.nu;
            out["mu"] = header.mu;
            out["omega"] = array_from(state.omega);
            return out;
        },
        py::arg("data"));
}
