#include "gvns/cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gvns/checkpoint.hpp"
#include "gvns/config.hpp"
#include "gvns/diagnostics.hpp"
#include "gvns/errors.hpp"
#include "gvns/experiments.hpp"
#include "gvns/run.hpp"

namespace fs = std::filesystem;

namespace gvns::cli {

namespace {

struct Options {
    std::string config;
    std::string out_dir;
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    std::string spectrum;
    std::string start;
    double length = two_pi;
    int cutoff = 0;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + path.string());
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Config load(const Options& o) {
    if (o.config.empty()) throw ConfigError("--config is required", "config", 0);
    Config c = load_config(o.config);
    if (o.seed) c.set_seed(*o.seed);
    return c;
}

fs::path prepare_out(const Options& o) {
    if (o.out_dir.empty()) throw ValidationError("--out is required");
    fs::create_directories(o.out_dir);
    return o.out_dir;
}

std::vector<std::string> names(const std::vector<fs::path>& files) {
    std::vector<std::string> v;
    for (const auto& f : files) v.push_back(f.filename().string());
    return v;
}

std::string checkpoint_name(long step) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "checkpoint_%08ld.gvns", step);
    return buf;
}

int simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const Config cfg = load(o);
    const fs::path dir = prepare_out(o);
    std::vector<fs::path> files;

    const fs::path csv_path = dir / "diagnostics.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    write_csv_header(csv);
    files.push_back(csv_path);

    RunHooks hooks;
    if (!o.start.empty()) hooks.start = read_checkpoint_file(o.start, cfg.sim.grid).first;
    hooks.on_record = [&](const DiagnosticsRecord& r) {
        write_csv_row(csv, r);
        csv.flush();
    };
    hooks.on_checkpoint = [&](const State& s, long step) {
        const fs::path p = dir / checkpoint_name(step);
        write_checkpoint_file(p.string(), s, cfg.sim.params);
        files.push_back(p);
    };
    const RunResult res = run(cfg.sim, hooks);
    csv.close();

    if (!res.blowup) {
        const fs::path p = dir / "final.gvns";
        write_checkpoint_file(p.string(), res.final_state, cfg.sim.params);
        files.push_back(p);
    }

    const SpectralField forcing = build_forcing(cfg.sim.forcing, cfg.sim.grid);
    nlohmann::json summary;
    summary["command"] = "simulate";
    summary["steps"] = res.steps;
    summary["t_final"] = res.final_state.t;
    summary["samples"] = res.records.size();
    summary["run"] = to_json(res.summary);
    summary["dimensionless"] = nullptr;
    summary["vorticity_bound"] = nullptr;
    if (cfg.sim.params.nu > 0.0 && cfg.sim.params.mu > 0.0 && forcing.max_abs() > 0.0) {
        summary["dimensionless"] =
            to_json(dimensionless(cfg.sim.params, cfg.sim.forcing, cfg.sim.grid, cfg.sim.sigma1));
    }
    if (cfg.sim.params.mu > 0.0) {
        nlohmann::json gronwall;
        for (auto [name, p] : {std::pair{"l2", LpIndex::l2}, {"l4", LpIndex::l4}, {"l8", LpIndex::l8},
                               {"linf", LpIndex::linf}}) {
            const VorticityBoundCheck chk = check_vorticity_bound(res.records, forcing, cfg.sim.params.mu, p);
            gronwall[name] = {{"worst_margin", chk.worst}, {"tolerance", chk.tolerance}, {"violations", chk.violations}};
        }
        summary["vorticity_bound"] = gronwall;
    }
    if (res.blowup) {
        summary["error"] = "blowup";
        summary["blowup_time"] = res.blowup_time;
        summary["message"] = res.message;
    }
    const fs::path sp = dir / "summary.json";
    write_text(sp, dump(summary));
    files.push_back(sp);
    write_manifest(dir.string(), o.config, cfg.echo(), names(files), "simulate");

    if (res.blowup) {
        err << nlohmann::json{{"error", "blowup"}, {"message", res.message}, {"last_valid_time", res.blowup_time}}.dump()
            << "\n";
        return blowup;
    }
    out << dump(summary);
    return ok;
}

int sweep(const Options& o, std::ostream& out, std::ostream&) {
    const Config cfg = load(o);
    if (!cfg.is_sweep()) throw ConfigError("sweep: config has no 'sweep.nu'", "sweep.nu", 0);
    const fs::path dir = prepare_out(o);
    std::vector<fs::path> files;

    SweepResult result;
    std::optional<std::string> failure;
    try {
        result = run_sweep(cfg.sweep_config(o.jobs));
    } catch (const SweepError& e) {
        result = e.result();
        failure = e.what();
    }

    const fs::path csv_path = dir / "diagnostics.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    csv << "row,nu,n,";
    write_csv_header(csv);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        char prefix[64];
        std::snprintf(prefix, sizeof prefix, "%zu,%.17g,%d,", i, result.rows[i].nu, result.rows[i].n_used);
        for (const auto& r : result.records[i]) {
            csv << prefix;
            write_csv_row(csv, r);
        }
    }
    csv.close();
    files.push_back(csv_path);

    nlohmann::json summary;
    summary["command"] = "sweep";
    summary["sweep"] = to_json(result);
    try {
        const BoundsComparison cmp = compare_bounds(result, cfg.spread_factor);
        summary["comparison"] = to_json(cmp);
        summary["findings"] = nlohmann::json::array();
        if (cmp.violated) {
            summary["findings"].push_back("measured radius below la_thm32 (C=1) by factor " +
                                          std::to_string(cmp.violation_factor));
        }
        if (cmp.spread_flag) summary["findings"].push_back("compensated product spread exceeds factor");
    } catch (const ValidationError& e) {
        summary["comparison"] = nullptr;
        summary["comparison_error"] = e.what();
    }
    if (failure) summary["error"] = "sweep";
    const fs::path sp = dir / "summary.json";
    write_text(sp, dump(summary));
    files.push_back(sp);
    write_manifest(dir.string(), o.config, cfg.echo(), names(files), "sweep");
    if (failure) throw SweepError(*failure, result);
    out << dump(summary);
    return ok;
}

int bounds(const Options& o, std::ostream& out, std::ostream&) {
    const Config cfg = load(o);
    const Dimensionless d = dimensionless(cfg.sim.params, cfg.sim.forcing, cfg.sim.grid, cfg.sim.sigma1);
    const BoundsReport r = all_bounds(d, cfg.sim.grid.area(), cfg.sim.sigma1, cfg.constants);
    nlohmann::json j = to_json(r);
    j["dimensionless"] = to_json(d);
    j["area"] = cfg.sim.grid.area();
    j["sigma1"] = cfg.sim.sigma1;
    const StripBound mf = strip_bound_mf(cfg.sim.forcing, cfg.sim.sigma1);
    j["strip_bound_mf"] = {{"delta_F", cfg.sim.sigma1}, {"value", mf.value}, {"upper_bound", mf.upper_bound}};
    if (!o.out_dir.empty()) {
        const fs::path dir = prepare_out(o);
        write_text(dir / "bounds.json", dump(j));
        write_manifest(dir.string(), o.config, cfg.echo(), {"bounds.json"}, "bounds");
    }
    out << dump(j);
    return ok;
}

int sync(const Options& o, std::ostream& out, std::ostream&) {
    const Config cfg = load(o);
    if (cfg.sync_kappas.empty()) throw ConfigError("sync: config has no 'sync.kappas'", "sync.kappas", 0);
    const fs::path dir = prepare_out(o);
    SyncConfig sc = cfg.sync_config();
    const std::string start = !o.start.empty() ? o.start : cfg.sync_start;
    if (!start.empty()) {
        sc.master_start = read_checkpoint_file(start, cfg.sim.grid).first;
    } else {
        SimConfig warm = cfg.sim;
        warm.t_end = cfg.sim.spinup_time();
        if (warm.t_end > 0.0) {
            RunResult w = run(warm);
            if (w.blowup) throw BlowupError(w.message, w.blowup_time);
            sc.master_start = std::move(w.final_state);
        }
    }
    const SyncReport rep = determining_modes(sc);
    nlohmann::json j = to_json(rep);
    const fs::path jp = dir / "sync.json";
    write_text(jp, dump(j));
    nlohmann::json summary = to_json(rep, false);
    summary["command"] = "sync";
    summary["n_det_within_dim_bound"] = rep.min_sufficient_n_det && double(*rep.min_sufficient_n_det) <= rep.n_dim;
    summary["n_det_within_pred"] = rep.min_sufficient_n_det && double(*rep.min_sufficient_n_det) <= rep.n_pred;
    const fs::path sp = dir / "summary.json";
    write_text(sp, dump(summary));
    write_manifest(dir.string(), o.config, cfg.echo(), {"sync.json", "summary.json"}, "sync");
    out << dump(summary);
    return ok;
}

int radius(const Options& o, std::ostream& out, std::ostream&) {
    if (o.spectrum.empty()) throw ValidationError("radius: --spectrum is required");
    std::ifstream in(o.spectrum);
    if (!in) throw ValidationError("radius: cannot open " + o.spectrum);
    std::vector<ShellValue> spec;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        ShellValue s;
        if (!(ls >> s.kappa >> s.value)) {
            if (lineno == 1) continue;   // header
            throw ValidationError("radius: malformed line " + std::to_string(lineno));
        }
        spec.push_back(s);
    }
    RadiusOptions opts;
    opts.length = o.length;
    opts.cutoff = o.cutoff;
    const RadiusEstimate e = estimate_radius(spec, opts);
    out << dump({{"l_a", e.l_a},
                 {"intercept", e.intercept},
                 {"r2", e.r2},
                 {"kappa_lo", e.kappa_lo},
                 {"kappa_hi", e.kappa_hi},
                 {"shells", e.shells},
                 {"accepted", e.accepted}});
    return ok;
}

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        EVP_DigestUpdate(ctx, buf, std::size_t(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

void write_manifest(const std::string& dir, const std::string& config_path, const std::string& config_echo,
                    const std::vector<std::string>& artifacts, const std::string& command) {
    nlohmann::json m;
    m["command"] = command;
    m["config_path"] = config_path;
    m["output_dir"] = dir;
    m["config_echo"] = config_echo;
    m["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts) {
        const fs::path p = fs::path(dir) / a;
        m["artifacts"].push_back({{"path", a}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p.string())}});
    }
    m["timestamp"] = iso_timestamp();
    write_text(fs::path(dir) / "manifest.json", dump(m));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Damped-driven 2D Navier-Stokes: simulation, analyticity radius and bound studies", "gvns"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Config file");
        sub->add_option("--out", o.out_dir, "Output directory");
        sub->add_option("--jobs", o.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "Seed override");
    };
    CLI::App* sim = app.add_subcommand("simulate", "Single run: diagnostics.csv, checkpoints, summary.json");
    common(sim);
    sim->add_option("--start", o.start, "Start from a checkpoint");
    CLI::App* sw = app.add_subcommand("sweep", "Viscosity sweep with scaling fit");
    common(sw);
    CLI::App* bd = app.add_subcommand("bounds", "Evaluate closed-form bounds, JSON on stdout");
    common(bd);
    CLI::App* sy = app.add_subcommand("sync", "Determining-modes synchronization experiment");
    common(sy);
    sy->add_option("--start", o.start, "Master start checkpoint");
    CLI::App* rd = app.add_subcommand("radius", "Radius estimate from a stored shell spectrum");
    rd->add_option("--spectrum", o.spectrum, "CSV of kappa,value")->required();
    rd->add_option("--length", o.length, "Domain period");
    rd->add_option("--cutoff", o.cutoff, "Dealias cutoff of the source grid");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return usage;
    }

    try {
        if (sim->parsed()) return simulate(o, out, err);
        if (sw->parsed()) return sweep(o, out, err);
        if (bd->parsed()) return bounds(o, out, err);
        if (sy->parsed()) return sync(o, out, err);
        if (rd->parsed()) return radius(o, out, err);
    } catch (const Error& e) {
        nlohmann::json j{{"error", e.category()}, {"message", e.what()}};
        if (const auto* c = dynamic_cast<const ConfigError*>(&e)) {
            j["key"] = c->key();
            j["line"] = c->line();
        }
        err << j.dump() << "\n";
        return dynamic_cast<const BlowupError*>(&e) ? blowup : failure;
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return failure;
    }
    return usage;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace gvns::cli
