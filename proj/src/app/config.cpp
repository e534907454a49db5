// config.cpp

#include "omspec/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace omspec::app {

using nlohmann::json;

FilterSpec RunConfig::filter() const {
    return FilterSpec::uniform(filter_gamma, grid.delta_min, grid.delta_max, grid.delta_points);
}

std::vector<PresetInfo> list_presets() {
    return {
        {"fig2", "lossless strong-strong coupling: g_a=4, g_m=1.2, kappa=0.5, Gamma=0.1, m_max=10, t=1,2,4,7,10,20"},
        {"fig4", "single-phonon stationary spectrum: fig2 parameters with m_max=1 at t=20"},
        {"fig5", "fig2 plus gamma_m=0.1, gamma_a=0.4, mbar=0.1 with thermal averaging"},
    };
}

RunConfig preset(const std::string& name) {
    RunConfig c;  // defaults are the fig2 set
    c.preset = name;
    if (name == "fig2") return c;
    if (name == "fig4") {
        c.params.m_max = 1;
        c.times = {20.0};
        return c;
    }
    if (name == "fig5") {
        c.params.gamma_m = 0.1;
        c.params.gamma_a = 0.4;
        c.params.mbar = 0.1;
        c.params.include_mbar_terms = false;
        c.thermal = true;
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

SpectrumMode parse_mode(const std::string& s) {
    if (s == "incoherent") return SpectrumMode::Incoherent;
    if (s == "coherent") return SpectrumMode::CoherentAsPrinted;
    throw ConfigError("mode must be 'incoherent' or 'coherent', got '" + s + "'");
}

Backend parse_backend(const std::string& s) {
    if (s == "closed") return Backend::ClosedForm;
    if (s == "quadrature") return Backend::Quadrature;
    throw ConfigError("backend must be 'closed' or 'quadrature', got '" + s + "'");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

template <typename T>
void read(const json& obj, const char* key, T& dst) {
    if (!obj.contains(key)) return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Branch parse_branch(const std::string& s) {
    if (s == "atom_excited") return Branch::AtomExcited;
    if (s == "photon_in_cavity") return Branch::PhotonInCavity;
    throw ConfigError("initial_state.branch must be 'atom_excited' or 'photon_in_cavity'");
}

}  // namespace

RunConfig apply_json(RunConfig c, const json& doc) {
    reject_unknown(doc,
                   {"preset", "params", "filter", "times", "initial_state", "thermal", "mode", "backend",
                    "outer_steps", "quadrature_step", "threads", "peak_prominence", "ledger", "evolve", "out", "svg"},
                   "config");
    if (doc.contains("preset")) {
        std::string name;
        read(doc, "preset", name);
        c = preset(name);
    }

    if (doc.contains("params")) {
        const json& p = doc.at("params");
        reject_unknown(p, {"delta_a", "g_a", "g_m", "kappa", "gamma_a", "gamma_m", "mbar", "m_max", "include_mbar_terms"},
                       "params");
        read(p, "delta_a", c.params.delta_a);
        read(p, "g_a", c.params.g_a);
        read(p, "g_m", c.params.g_m);
        read(p, "kappa", c.params.kappa);
        read(p, "gamma_a", c.params.gamma_a);
        read(p, "gamma_m", c.params.gamma_m);
        read(p, "mbar", c.params.mbar);
        read(p, "m_max", c.params.m_max);
        read(p, "include_mbar_terms", c.params.include_mbar_terms);
    }
    if (doc.contains("filter")) {
        const json& f = doc.at("filter");
        reject_unknown(f, {"gamma", "delta_min", "delta_max", "delta_points"}, "filter");
        read(f, "gamma", c.filter_gamma);
        read(f, "delta_min", c.grid.delta_min);
        read(f, "delta_max", c.grid.delta_max);
        read(f, "delta_points", c.grid.delta_points);
    }
    read(doc, "times", c.times);
    if (doc.contains("initial_state")) {
        const json& s = doc.at("initial_state");
        reject_unknown(s, {"branch", "phonons"}, "initial_state");
        std::string branch = to_string(c.initial.branch);
        read(s, "branch", branch);
        c.initial.branch = parse_branch(branch);
        read(s, "phonons", c.initial.phonons);
    }
    read(doc, "thermal", c.thermal);
    if (doc.contains("mode")) {
        std::string mode;
        read(doc, "mode", mode);
        c.mode = parse_mode(mode);
    }
    if (doc.contains("backend")) {
        std::string backend;
        read(doc, "backend", backend);
        c.backend = parse_backend(backend);
    }
    read(doc, "outer_steps", c.options.outer_steps);
    read(doc, "quadrature_step", c.options.quadrature_step);
    read(doc, "threads", c.options.threads);
    read(doc, "peak_prominence", c.peak_prominence);
    if (doc.contains("ledger")) {
        const json& l = doc.at("ledger");
        reject_unknown(l, {"tmax", "steps"}, "ledger");
        read(l, "tmax", c.ledger_tmax);
        read(l, "steps", c.ledger_steps);
    }
    if (doc.contains("evolve")) {
        const json& e = doc.at("evolve");
        reject_unknown(e, {"tmax", "points"}, "evolve");
        read(e, "tmax", c.evolve_tmax);
        read(e, "points", c.evolve_points);
    }
    read(doc, "out", c.out_dir);
    read(doc, "svg", c.svg);
    return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return apply_json(std::move(base), doc);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["preset"] = c.preset ? nlohmann::ordered_json(*c.preset) : nlohmann::ordered_json(nullptr);
    j["params"] = {{"delta_a", c.params.delta_a}, {"g_a", c.params.g_a},         {"g_m", c.params.g_m},
                   {"kappa", c.params.kappa},     {"gamma_a", c.params.gamma_a}, {"gamma_m", c.params.gamma_m},
                   {"mbar", c.params.mbar},       {"m_max", c.params.m_max},
                   {"include_mbar_terms", c.params.include_mbar_terms}};
    j["filter"] = {{"gamma", c.filter_gamma},
                   {"delta_min", c.grid.delta_min},
                   {"delta_max", c.grid.delta_max},
                   {"delta_points", c.grid.delta_points}};
    j["times"] = c.times;
    j["initial_state"] = {{"branch", to_string(c.initial.branch)}, {"phonons", c.initial.phonons}};
    j["thermal"] = c.thermal;
    j["mode"] = to_string(c.mode);
    j["backend"] = to_string(c.backend);
    j["outer_steps"] = c.options.outer_steps;
    j["quadrature_step"] = c.options.quadrature_step;
    j["threads"] = c.options.threads;
    j["peak_prominence"] = c.peak_prominence;
    j["ledger"] = {{"tmax", c.ledger_tmax}, {"steps", c.ledger_steps}};
    j["evolve"] = {{"tmax", c.evolve_tmax}, {"points", c.evolve_points}};
    j["out"] = c.out_dir;
    j["svg"] = c.svg;
    return j;
}

void check(const RunConfig& c) {
    const auto diags = validate(c.params);
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) throw ConfigError(d.message);
    }
    if (!(c.filter_gamma > 0.0)) throw ConfigError("filter gamma must be positive");
    if (c.grid.delta_points < 3) throw ConfigError("delta_points must be at least 3");
    if (!(c.grid.delta_max > c.grid.delta_min)) throw ConfigError("delta_max must exceed delta_min");
    if (c.times.empty()) throw ConfigError("at least one observation time is required");
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        if (!(c.times[i] >= 0.0) || !std::isfinite(c.times[i])) throw ConfigError("times must be finite and non-negative");
        if (i > 0 && !(c.times[i] > c.times[i - 1])) throw ConfigError("times must be strictly increasing");
    }
    if (c.initial.phonons < 0 || c.initial.phonons > c.params.m_max) {
        throw ConfigError("initial phonon number outside [0, m_max]");
    }
    if (c.options.outer_steps < 2) throw ConfigError("outer_steps must be at least 2");
    if (!(c.options.quadrature_step > 0.0)) throw ConfigError("quadrature_step must be positive");
    if (!(c.peak_prominence > 0.0 && c.peak_prominence < 1.0)) throw ConfigError("peak_prominence must lie in (0, 1)");
    if (!(c.ledger_tmax > 0.0) || c.ledger_steps < 2) throw ConfigError("ledger needs tmax > 0 and steps >= 2");
    if (!(c.evolve_tmax >= 0.0) || c.evolve_points < 1) throw ConfigError("evolve needs tmax >= 0 and points >= 1");
}

}  // namespace omspec::app
