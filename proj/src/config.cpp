#include "gvns/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gvns/errors.hpp"

namespace gvns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Entry {
    std::string value;
    int line = 0;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const Entry& require(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'", key, 0);
        return it->second;
    }

    double to_double(const std::string& key, const Entry& e) const {
        double v = 0.0;
        const std::string s = e.value;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
            throw ConfigError("config: line " + std::to_string(e.line) + ": '" + key + "' expects a number, got '" + s + "'",
                              key, e.line);
        }
        return v;
    }

    long long to_int(const std::string& key, const std::string& s, int line) const {
        long long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw ConfigError("config: line " + std::to_string(line) + ": '" + key + "' expects an integer, got '" + s + "'",
                              key, line);
        }
        return v;
    }

    double number(const std::string& key) const { return to_double(key, require(key)); }
    double number(const std::string& key, double def) const { return has(key) ? number(key) : def; }

    int integer(const std::string& key, int def) const {
        if (!has(key)) return def;
        const Entry& e = entries_.at(key);
        const long long v = to_int(key, e.value, e.line);
        if (v < INT32_MIN || v > INT32_MAX) throw ConfigError("config: '" + key + "' out of range", key, e.line);
        return int(v);
    }

    std::uint64_t u64(const std::string& key, std::uint64_t def) const {
        if (!has(key)) return def;
        const Entry& e = entries_.at(key);
        std::uint64_t v = 0;
        const std::string& s = e.value;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw ConfigError("config: line " + std::to_string(e.line) + ": '" + key + "' expects an unsigned integer",
                              key, e.line);
        }
        return v;
    }

    bool boolean(const std::string& key, bool def) const {
        if (!has(key)) return def;
        const Entry& e = entries_.at(key);
        if (e.value == "true" || e.value == "1") return true;
        if (e.value == "false" || e.value == "0") return false;
        throw ConfigError("config: line " + std::to_string(e.line) + ": '" + key + "' expects true or false", key, e.line);
    }

    std::optional<double> auto_number(const std::string& key) const {
        if (!has(key) || entries_.at(key).value == "auto") return std::nullopt;
        return number(key);
    }

    std::string text(const std::string& key, const std::string& def) const {
        return has(key) ? entries_.at(key).value : def;
    }

    std::vector<std::string> tokens(const std::string& key) const {
        std::string s = entries_.at(key).value;
        std::replace(s.begin(), s.end(), ',', ' ');
        std::istringstream in(s);
        std::vector<std::string> out;
        for (std::string t; in >> t;) out.push_back(t);
        return out;
    }

    std::vector<double> numbers(const std::string& key) const {
        std::vector<double> out;
        if (!has(key)) return out;
        const int line = entries_.at(key).line;
        for (const auto& t : tokens(key)) out.push_back(to_double(key, Entry{t, line}));
        return out;
    }

    std::vector<int> integers(const std::string& key) const {
        std::vector<int> out;
        if (!has(key)) return out;
        const int line = entries_.at(key).line;
        for (const auto& t : tokens(key)) out.push_back(int(to_int(key, t, line)));
        return out;
    }

    int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

private:
    std::map<std::string, Entry> entries_;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "grid.n",           "grid.length",       "params.nu",        "params.mu",       "forcing.modes",
        "run.t_end",        "run.dt",            "run.spinup",       "run.sample_every", "run.checkpoint_every",
        "run.sigma1",       "run.seed",          "initial.kind",     "initial.amplitude", "initial.slope",
        "initial.k",        "sweep.nu",          "sweep.n",          "sweep.refine",    "sweep.max_n",
        "sweep.spread_factor", "sync.kappas",    "sync.horizon",     "sync.threshold",  "sync.record_every",
        "sync.start",       "bounds.c",          "bounds.C",         "bounds.c1",       "bounds.c2",
        "bounds.c3",        "bounds.c4",         "bounds.c5",        "bounds.c7",       "bounds.c8",
    };
    return keys;
}

ForcingSpec parse_modes(const std::string& text, int line) {
    ForcingSpec spec;
    std::istringstream groups(text);
    for (std::string group; std::getline(groups, group, ';');) {
        std::replace(group.begin(), group.end(), ',', ' ');
        std::istringstream in(group);
        std::vector<std::string> parts;
        for (std::string t; in >> t;) parts.push_back(t);
        if (parts.empty()) continue;
        auto bad = [&] {
            return ConfigError("config: line " + std::to_string(line) +
                                   ": 'forcing.modes' entries are 'k1 k2 amplitude [phase]', got '" + trim(group) + "'",
                               "forcing.modes", line);
        };
        if (parts.size() < 3 || parts.size() > 4) throw bad();
        ForcingMode m;
        for (int i = 0; i < 2; ++i) {
            auto [p, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), m.k[i]);
            if (ec != std::errc() || p != parts[i].data() + parts[i].size()) throw bad();
        }
        double vals[2] = {0.0, 0.0};
        for (std::size_t i = 2; i < parts.size(); ++i) {
            auto [p, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), vals[i - 2]);
            if (ec != std::errc() || p != parts[i].data() + parts[i].size()) throw bad();
        }
        m.amplitude = vals[0];
        m.phase = vals[1];
        spec.modes.push_back(m);
    }
    if (spec.modes.empty()) throw ConfigError("config: 'forcing.modes' is empty", "forcing.modes", line);
    return spec;
}

template <class F>
auto validated(const std::string& key, int line, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ConfigError("config: line " + std::to_string(line) + ": '" + key + "': " + e.what(), key, line);
    }
}

}  // namespace

Config parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string section;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config: line " + std::to_string(lineno) + ": bad section header", line, lineno);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected 'key = value'", line, lineno);
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        if (!known_keys().count(key)) {
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" + key + "'", key, lineno);
        }
        if (entries.count(key)) {
            throw ConfigError("config: line " + std::to_string(lineno) + ": duplicate key '" + key + "'", key, lineno);
        }
        if (value.empty()) {
            throw ConfigError("config: line " + std::to_string(lineno) + ": '" + key + "' has no value", key, lineno);
        }
        entries[key] = Entry{value, lineno};
    }

    const Reader r(std::move(entries));
    Config c;
    const int n = int(r.number("grid.n"));
    if (double(n) != r.number("grid.n")) {
        throw ConfigError("config: 'grid.n' expects an integer", "grid.n", r.line("grid.n"));
    }
    const double length = r.number("grid.length", two_pi);
    c.sim.grid = validated("grid.n", r.line("grid.n"), [&] { return GridSpec(n, length); });
    c.sim.params.nu = r.number("params.nu");
    c.sim.params.mu = r.number("params.mu");
    validated("params.nu", r.line("params.nu"), [&] { c.sim.params.validate(false); return 0; });
    c.sim.forcing = parse_modes(r.require("forcing.modes").value, r.line("forcing.modes"));
    c.sim.t_end = r.number("run.t_end");
    c.sim.dt = r.auto_number("run.dt");
    c.sim.spinup = r.auto_number("run.spinup");
    c.sim.sample_every = r.integer("run.sample_every", 10);
    c.sim.checkpoint_every = r.integer("run.checkpoint_every", 0);
    c.sim.sigma1 = r.number("run.sigma1", 1.0);
    c.seed = r.u64("run.seed", 0);

    const std::string kind = r.text("initial.kind", "random");
    if (kind == "zero") {
        c.sim.initial = init::Zero{};
    } else if (kind == "single") {
        init::SingleMode s;
        s.amplitude = r.number("initial.amplitude", 1.0);
        if (r.has("initial.k")) {
            const auto k = r.integers("initial.k");
            if (k.size() != 2) throw ConfigError("config: 'initial.k' expects two integers", "initial.k", r.line("initial.k"));
            s.k = {k[0], k[1]};
        }
        c.sim.initial = s;
    } else if (kind == "random") {
        init::Random s;
        s.seed = c.seed;
        s.amplitude = r.number("initial.amplitude", 1.0);
        s.slope = r.number("initial.slope", 2.0);
        c.sim.initial = s;
    } else {
        throw ConfigError("config: line " + std::to_string(r.line("initial.kind")) +
                              ": 'initial.kind' must be zero, single or random",
                          "initial.kind", r.line("initial.kind"));
    }

    c.sweep_nu = r.numbers("sweep.nu");
    c.sweep_n = r.integers("sweep.n");
    if (!c.sweep_n.empty() && c.sweep_n.size() != c.sweep_nu.size()) {
        throw ConfigError("config: 'sweep.n' must list one resolution per viscosity", "sweep.n", r.line("sweep.n"));
    }
    c.sweep_refine = r.boolean("sweep.refine", true);
    c.sweep_max_n = r.integer("sweep.max_n", 1024);
    c.spread_factor = r.number("sweep.spread_factor", 3.0);
    c.sync_kappas = r.integers("sync.kappas");
    c.sync_horizon = r.auto_number("sync.horizon");
    c.sync_threshold = r.number("sync.threshold", 1e-6);
    c.sync_record_every = r.integer("sync.record_every", 10);
    c.sync_start = r.text("sync.start", "");

    BoundsConstants& k = c.constants;
    k.c = r.number("bounds.c", k.c);
    k.C = r.number("bounds.C", k.C);
    k.c1 = r.number("bounds.c1", k.c1);
    k.c2 = r.number("bounds.c2", k.node_c2());
    k.c3 = r.number("bounds.c3", k.c3);
    k.c4 = r.number("bounds.c4", k.c4);
    k.c5 = r.number("bounds.c5", k.node_c5());
    k.c7 = r.number("bounds.c7", k.c7);
    k.c8 = r.number("bounds.c8", k.c8);

    validated("run.t_end", r.line("run.t_end"), [&] { c.sim.validate(); return 0; });
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path, "", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void Config::set_seed(std::uint64_t s) {
    seed = s;
    if (auto* r = std::get_if<init::Random>(&sim.initial)) r->seed = s;
}

SweepConfig Config::sweep_config(int jobs) const {
    SweepConfig s;
    s.base = sim;
    s.nu_values = sweep_nu;
    s.n_values = sweep_n;
    s.refine = sweep_refine;
    s.max_n = sweep_max_n;
    s.constants = constants;
    s.jobs = jobs;
    return s;
}

SyncConfig Config::sync_config() const {
    SyncConfig s;
    s.sim = sim;
    s.kappas = sync_kappas;
    s.horizon = sync_horizon;
    s.threshold = sync_threshold;
    s.record_every = sync_record_every;
    return s;
}

std::string Config::echo() const {
    std::ostringstream o;
    auto put = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
    auto join_d = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
        return s;
    };
    auto join_i = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    put("grid.n", std::to_string(sim.grid.n()));
    put("grid.length", fmt(sim.grid.length()));
    put("params.nu", fmt(sim.params.nu));
    put("params.mu", fmt(sim.params.mu));
    std::string modes;
    for (std::size_t i = 0; i < sim.forcing.modes.size(); ++i) {
        const auto& m = sim.forcing.modes[i];
        modes += (i ? "; " : "") + std::to_string(m.k[0]) + " " + std::to_string(m.k[1]) + " " + fmt(m.amplitude) +
                 " " + fmt(m.phase);
    }
    put("forcing.modes", modes);
    put("run.t_end", fmt(sim.t_end));
    put("run.dt", sim.dt ? fmt(*sim.dt) : "auto");
    put("run.spinup", fmt(sim.spinup_time()));
    put("run.sample_every", std::to_string(sim.sample_every));
    put("run.checkpoint_every", std::to_string(sim.checkpoint_every));
    put("run.sigma1", fmt(sim.sigma1));
    put("run.seed", std::to_string(seed));
    std::visit(
        [&](const auto& ic) {
            using T = std::decay_t<decltype(ic)>;
            if constexpr (std::is_same_v<T, init::Zero>) {
                put("initial.kind", "zero");
            } else if constexpr (std::is_same_v<T, init::SingleMode>) {
                put("initial.kind", "single");
                put("initial.amplitude", fmt(ic.amplitude));
                put("initial.k", std::to_string(ic.k[0]) + " " + std::to_string(ic.k[1]));
            } else {
                put("initial.kind", "random");
                put("initial.amplitude", fmt(ic.amplitude));
                put("initial.slope", fmt(ic.slope));
            }
        },
        sim.initial);
    if (!sweep_nu.empty()) {
        put("sweep.nu", join_d(sweep_nu));
        if (!sweep_n.empty()) put("sweep.n", join_i(sweep_n));
        put("sweep.refine", sweep_refine ? "true" : "false");
        put("sweep.max_n", std::to_string(sweep_max_n));
        put("sweep.spread_factor", fmt(spread_factor));
    }
    if (!sync_kappas.empty()) {
        put("sync.kappas", join_i(sync_kappas));
        put("sync.horizon", sync_horizon ? fmt(*sync_horizon) : fmt(20.0 / sim.params.mu));
        put("sync.threshold", fmt(sync_threshold));
        put("sync.record_every", std::to_string(sync_record_every));
        if (!sync_start.empty()) put("sync.start", sync_start);
    }
    for (const auto& [name, v] : constants.echo()) put("bounds." + name, fmt(v));
    return o.str();
}

}  // namespace gvns
