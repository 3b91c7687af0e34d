#pragma once

#include "sgk/config.hpp"
#include "sgk/report.hpp"

#include <map>
#include <string>

namespace sgk {

// A judged report plus the CSV tables and SVG plots it produced, keyed by file name.
struct SuiteOutput {
    ReportBundle report;
    std::map<std::string, Table> tables;
    std::map<std::string, std::string> plots;

    void merge(SuiteOutput other);
};

// Refinement of the exact-solution residuals, a per-beta wobbler table and profile snapshots.
SuiteOutput exact_suite(const ExperimentConfig& cfg);
// Nonlinear transformation identities between closed-form solutions.
SuiteOutput bt_suite(const ExperimentConfig& cfg);
// Linearized transformation pairs and the wave equations their components satisfy.
SuiteOutput lbt_suite(const ExperimentConfig& cfg);
SuiteOutput spectrum_suite(const ExperimentConfig& cfg);
// Manifold constructor: fixed point, kink consistency, momentum identity, final-speed equivalence.
SuiteOutput manifold_suite(const ExperimentConfig& cfg);
// Lift/descent round trips on seeded random inputs for both backgrounds.
SuiteOutput roundtrip_suite(const ExperimentConfig& cfg);
SuiteOutput conservation_suite(const ExperimentConfig& cfg);
// Wobbler period return and orbital distance under odd noise.
SuiteOutput wobbler_suite(const ExperimentConfig& cfg);
// Evolution of manifold data for every (seed, eta) cell.
SuiteOutput stability_suite(const ExperimentConfig& cfg);
SuiteOutput vacuum_suite(const ExperimentConfig& cfg);
// Control: the moving kink carries momentum -4 beta gamma, so it is off the zero-momentum manifold.
SuiteOutput moving_kink_control(const ExperimentConfig& cfg);

// Single lift or descent run described by cfg.map / cfg.input.
SuiteOutput map_run(const ExperimentConfig& cfg);
// Evolution of cfg.solution with the fixed probe series.
SuiteOutput evolve_run(const ExperimentConfig& cfg);
// Concurrent parameter grid named by cfg.sweep.
SuiteOutput sweep_run(const ExperimentConfig& cfg);

}  // namespace sgk
