#pragma once

#include "sgk/core.hpp"
#include "sgk/evolver.hpp"
#include "sgk/modulation.hpp"
#include "sgk/sampler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sgk {

// Random smooth profile sum_k a_k x^p exp(-(x/s_k)^2), p = 1 (odd) or 0 (even), normalized to unit H1 norm.
Field random_profile(const Grid& g, std::uint64_t seed, Symmetry kind, int terms = 3);

struct CatalogEntry {
    std::string name;
    SolutionSampler sampler;
    Model model;
    Background frame;  // evolution frame for conservation runs
};

// kink (beta 0.3), breather (0.5), wobbler (0.3), 2-kink (0.5), 3-soliton (0.3, 0.2), phi4 kink.
std::vector<CatalogEntry> exact_catalog();

struct RefinementResult {
    std::string family;
    std::vector<double> h;
    std::vector<double> residual;
    std::vector<double> order;  // observed order between consecutive levels
    double min_order() const;
};

// PDE residual max over |x| <= half_width at time t with dt = h on each level.
RefinementResult refinement_study(const CatalogEntry& e, const std::vector<double>& hs, double t = 0.7,
                                  double half_width = 40.0);

struct ManifoldConfig {
    double eta = 0.04;
    std::uint64_t seed = 1;
    double half_width = 120.0;
    double h = 0.02;
    double dt = 0.015;
    double t_end = 200.0;
    long stride = 20;
    double eps = 0.1;
    double delta = 0.0;
    WeightSpec weight{0.5, 0.0};
};

struct SeriesRow {
    double t, rho, rho_rate, energy, momentum, local_norm_I, weighted_norm;
};

struct ManifoldResult {
    ManifoldConfig config;
    double data_norm = 0.0;
    std::vector<ModulationRecord> records;
    std::vector<SeriesRow> rows;
    RhoRateReport rates;
    Classification classification;
    double max_abs_momentum = 0.0;
    double max_ortho = 0.0;
    double stilde_identity0 = 0.0;
    double stilde_constant = 0.0;
    double local_initial = 0.0, local_final = 0.0;
    std::optional<double> exit_time;
};

// Data Phi(y0, 0, delta) with y0 = eta * random odd profile; evolves the kink side and the vacuum side together.
ManifoldResult run_manifold(const ManifoldConfig& cfg);

struct OrbitConfig {
    double beta = 0.3;
    double eta = 1e-3;
    std::uint64_t seed = 7;
    double half_width = 120.0;
    double h = 0.02;
    double dt = 0.015;
    double t_end = 100.0;
    long stride = 67;
};

struct OrbitResult {
    double sup_distance = 0.0;
    double constant = 0.0;  // sup_distance / eta
    double max_time_shift = 0.0;
    std::vector<double> t, distance, shift;
};

// Odd-odd noise on the wobbler; distance to the best time-shifted wobbler W(t + x1, .).
OrbitResult run_wobbler_orbit(const OrbitConfig& cfg);

// H1 x L2 distance between the evolved wobbler after one period and its initial state.
double wobbler_period_error(double beta, double h, double dt, double half_width);

struct VacuumConfig {
    double eta = 0.05;
    std::uint64_t seed = 3;
    double half_width = 120.0;
    double h = 0.02;
    double dt = 0.015;
    double t_end = 200.0;
    long stride = 20;
    double c1 = 0.5;
    double a = -5.0, b = 5.0;
};

struct VacuumResult {
    std::vector<double> t, local_norm, cumulative;
    std::vector<double> quarter_max;  // max local norm per quarter of the run
    double sup_norm = 0.0;            // sup_t of the global H1 x L2 norm
    double tail_fraction = 0.0;       // growth of the cumulative integral over the last quarter, relative
    double final_ratio = 0.0;         // final / initial local norm
};

VacuumResult run_vacuum_decay(const VacuumConfig& cfg);

// Log-log least-squares slope.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sgk
