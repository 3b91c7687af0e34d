#include "sgk/config.hpp"
#include "sgk/core.hpp"
#include "sgk/evolver.hpp"
#include "sgk/modulation.hpp"
#include "sgk/solutions.hpp"
#include "sgk/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace sgk;

enum Exit { ok = 0, criterion_failed = 1, bad_input = 2, solver_failed = 3 };

void check_parameters(const ExperimentConfig& c) {
    lorentz_gamma(c.beta);
    lorentz_gamma(c.evolve.beta);
    for (double b : c.betas) lorentz_gamma(b);
    if (!(c.grid.h > 0) || !(c.grid.half_width > 0)) throw ParameterError("grid needs h > 0 and half_width > 0");
    if (!(c.evolve.dt > 0) || !(c.evolve.t_end >= 0) || c.evolve.stride < 1)
        throw ParameterError("evolve needs dt > 0, t_end >= 0 and stride >= 1");
    if (!(c.amplitude >= 0)) throw ParameterError("amplitude must be non-negative");
    for (double e : c.etas)
        if (!(e > 0)) throw ParameterError("etas must be positive");
    for (double h : c.hs)
        if (!(h > 0)) throw ParameterError("hs must be positive");
    for (double d : c.deltas)
        if (!(d > -1)) throw ParameterError("deltas must exceed -1");
}

SuiteOutput run(const std::string& command, const ExperimentConfig& cfg) {
    if (command == "verify-exact") return exact_suite(cfg);
    if (command == "verify-bt") {
        SuiteOutput o = bt_suite(cfg);
        o.merge(lbt_suite(cfg));
        return o;
    }
    if (command == "spectrum") return spectrum_suite(cfg);
    if (command == "lift" || command == "descend") return map_run(cfg);
    if (command == "evolve") return evolve_run(cfg);
    if (command == "sweep") return sweep_run(cfg);
    if (cfg.solution == "manifold") {
        SuiteOutput o = stability_suite(cfg);
        o.merge(moving_kink_control(cfg));
        return o;
    }
    if (cfg.solution == "wobbler") return wobbler_suite(cfg);
    if (cfg.solution == "vacuum") return vacuum_suite(cfg);
    throw ParameterError("stability expects solution manifold, wobbler or vacuum, not '" + cfg.solution + "'");
}

void write_outputs(SuiteOutput& o, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    for (const auto& [name, table] : o.tables) {
        write_text((dir / name).string(), to_csv(table));
        o.report.files.push_back(name);
    }
    for (const auto& [name, svg] : o.plots) {
        write_text((dir / name).string(), svg);
        o.report.files.push_back(name);
    }
    write_text((dir / "config.json").string(), to_json_string(cfg));
    o.report.files.push_back("config.json");
    write_text((dir / "summary.json").string(), summary_json(o.report));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kink stability toolkit: exact solutions, transformations, spectra and evolution"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int workers = 0;
    bool strict = false;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"verify-exact", "residual refinement of the closed-form solutions"},
        {"verify-bt", "nonlinear and linearized transformation identities"},
        {"spectrum", "discrete spectra of the linearized operators"},
        {"lift", "map data from the zero or breather background to the kink or wobbler"},
        {"descend", "inverse of lift"},
        {"evolve", "evolve a closed-form solution and record the probe series"},
        {"stability", "manifold, wobbler orbit or vacuum stability experiment"},
        {"sweep", "concurrent parameter sweep"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON experiment config");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--workers", workers, "concurrent workers")->check(CLI::PositiveNumber);
        sub->add_flag("--strict", strict, "divide upper-bound tolerances by 10");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    ExperimentConfig cfg;
    try {
        cfg = default_config(command);
        if (!config_path.empty()) cfg = load_config(config_path, cfg);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed) cfg.seed = seed;
        if (workers) cfg.workers = workers;
        if (strict) cfg.tighten();
        check_parameters(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    }

    try {
        SuiteOutput o = run(command, cfg);
        write_outputs(o, cfg);
        std::cout << render_text(o.report);
        std::cout << (o.report.all_pass() ? "all criteria passed" : "criteria failed") << " (" << cfg.out_dir
                  << "/summary.json)\n";
        return o.report.all_pass() ? ok : criterion_failed;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return bad_input;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return bad_input;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return bad_input;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\nresidual history:";
        for (double r : e.residual_history) std::cerr << ' ' << format_number(r);
        std::cerr << '\n';
        return solver_failed;
    } catch (const EvolutionAborted& e) {
        std::cerr << "evolution aborted: " << e.what() << '\n';
        return solver_failed;
    } catch (const DiagnosticFailure& e) {
        std::cerr << "diagnostic failure at node " << e.node_index << ": " << e.what() << '\n';
        return solver_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return solver_failed;
    }
}
