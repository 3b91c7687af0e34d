#include "sgk/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace sgk {

using nlohmann::json;

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t{
        {"exact_order", 1.9},      {"exact_residual", 1e-5}, {"bt_residual", 5e-6},   {"lbt_residual", 5e-6},
        {"eigen_error", 2e-3},     {"phi_zero", 1e-12},      {"phi_identity", 1e-8},  {"momentum_identity", 1e-6},
        {"final_speed", 1e-12},    {"round_trip", 1e-7},     {"parity", 1e-9},        {"kink_energy", 1e-8},
        {"energy_drift", 1e-5},    {"reversal", 1e-9},       {"period", 1e-4},        {"momentum_zero", 1e-5},
        {"lift_residual", 1e-9},   {"orthogonality", 1e-8},  {"spectrum_order", 1.8},  {"rate_slope_center", 2.0},
        {"rate_slope_width", 0.3}, {"rate_ratio", 1.0},      {"local_decay", 0.1},    {"orbit_constant", 3.0},
        {"vacuum_tail", 0.05},     {"vacuum_final", 0.1},    {"absent_window", 1.3},  {"three_soliton_order", 0.9},
    };
    return t;
}

bool is_lower_bound(const std::string& name) {
    return name == "exact_order" || name == "spectrum_order" || name == "rate_slope_center" ||
           name == "rate_slope_width" || name == "absent_window" || name == "three_soliton_order";
}

void ExperimentConfig::tighten() {
    for (const auto& [name, value] : default_tolerances())
        if (!is_lower_bound(name)) tolerances[name] = tol(name) / 10.0;
}

double ExperimentConfig::tol(const std::string& name) const {
    auto it = tolerances.find(name);
    if (it != tolerances.end()) return it->second;
    auto d = default_tolerances().find(name);
    if (d == default_tolerances().end()) throw ConfigError("unknown tolerance '" + name + "'");
    return d->second;
}

namespace {

json to_json(const ExperimentConfig& c) {
    return json{
        {"version", c.version},
        {"experiment", c.experiment},
        {"model", c.model},
        {"solution", c.solution},
        {"beta", c.beta},
        {"v", c.v},
        {"t0", c.t0},
        {"grid", {{"half_width", c.grid.half_width}, {"h", c.grid.h}}},
        {"evolve",
         {{"dt", c.evolve.dt},
          {"t_end", c.evolve.t_end},
          {"stride", c.evolve.stride},
          {"background", c.evolve.background},
          {"beta", c.evolve.beta},
          {"x0", c.evolve.x0},
          {"spatial_order", c.evolve.spatial_order}}},
        {"probes", c.probes},
        {"tolerances", c.tolerances},
        {"out_dir", c.out_dir},
        {"seed", c.seed},
        {"workers", c.workers},
        {"map", c.map},
        {"input", c.input},
        {"amplitude", c.amplitude},
        {"delta", c.delta},
        {"rho", c.rho},
        {"time", c.time},
        {"etas", c.etas},
        {"deltas", c.deltas},
        {"betas", c.betas},
        {"seeds", c.seeds},
        {"hs", c.hs},
        {"vs", c.vs},
        {"sweep", c.sweep},
    };
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

std::string to_json_string(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

ExperimentConfig default_config(const std::string& command) {
    ExperimentConfig c;
    c.experiment = command;
    if (command == "verify-exact" || command == "verify-bt" || command == "spectrum") {
        c.solution = "catalog";
    } else if (command == "lift" || command == "descend") {
        c.map = command == "lift" ? "zero-to-kink" : "kink-to-zero";
    } else if (command == "evolve") {
        c.solution = "wobbler";
        c.evolve.t_end = 20.0;
    } else if (command == "stability") {
        c.solution = "manifold";
        c.grid.half_width = 120.0;
        c.evolve.t_end = 200.0;
        c.evolve.stride = 20;
    } else if (command == "sweep") {
        c.sweep = "final-speed";
        c.amplitude = 0.02;
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    return c;
}

ExperimentConfig config_from_json_string(const std::string& text, ExperimentConfig base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("version")) throw ConfigError("config lacks a 'version' key");
    ExperimentConfig c = std::move(base);
    read(j, "version", c.version);
    if (c.version != config_version)
        throw ConfigError("unsupported config version " + std::to_string(c.version));
    reject_unknown(j, {"version", "experiment", "model", "solution", "beta", "v", "t0", "grid", "evolve", "probes",
                       "tolerances", "out_dir", "seed", "workers", "map", "input", "amplitude", "delta", "rho", "time",
                       "etas", "deltas", "betas", "seeds", "hs", "vs", "sweep"},
                   "config");
    read(j, "experiment", c.experiment);
    read(j, "model", c.model);
    read(j, "solution", c.solution);
    read(j, "beta", c.beta);
    read(j, "v", c.v);
    read(j, "t0", c.t0);
    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown(g, {"half_width", "h"}, "grid");
        read(g, "half_width", c.grid.half_width);
        read(g, "h", c.grid.h);
    }
    if (j.contains("evolve")) {
        const json& e = j["evolve"];
        reject_unknown(e, {"dt", "t_end", "stride", "background", "beta", "x0", "spatial_order"}, "evolve");
        read(e, "dt", c.evolve.dt);
        read(e, "t_end", c.evolve.t_end);
        read(e, "stride", c.evolve.stride);
        read(e, "background", c.evolve.background);
        read(e, "beta", c.evolve.beta);
        read(e, "x0", c.evolve.x0);
        read(e, "spatial_order", c.evolve.spatial_order);
    }
    read(j, "probes", c.probes);
    read(j, "tolerances", c.tolerances);
    for (const auto& [k, v] : c.tolerances)
        if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance '" + k + "'");
    read(j, "out_dir", c.out_dir);
    read(j, "seed", c.seed);
    read(j, "workers", c.workers);
    read(j, "map", c.map);
    read(j, "input", c.input);
    read(j, "amplitude", c.amplitude);
    read(j, "delta", c.delta);
    read(j, "rho", c.rho);
    read(j, "time", c.time);
    read(j, "etas", c.etas);
    read(j, "deltas", c.deltas);
    read(j, "betas", c.betas);
    read(j, "seeds", c.seeds);
    read(j, "hs", c.hs);
    read(j, "vs", c.vs);
    read(j, "sweep", c.sweep);
    if (c.workers < 1) throw ConfigError("workers must be positive");
    return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_string(ss.str(), std::move(base));
}

void save_config(const ExperimentConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << to_json_string(c);
}

}  // namespace sgk
