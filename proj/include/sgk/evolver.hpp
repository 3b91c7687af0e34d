#pragma once

#include "sgk/core.hpp"
#include "sgk/sampler.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sgk {

enum class BackgroundKind { none, static_kink, moving_kink };

// Kink profile held fixed (static) or translated at speed beta (moving); center beta t - x0.
// For phi4 the kink is tanh(x / sqrt 2).
struct Background {
    BackgroundKind kind = BackgroundKind::none;
    double beta = 0.0;
    double x0 = 0.0;

    static Background none() { return {}; }
    static Background static_kink() { return {BackgroundKind::static_kink, 0.0, 0.0}; }
    static Background moving_kink(double beta, double x0 = 0.0) { return {BackgroundKind::moving_kink, beta, x0}; }

    // (value, rate) of the background at (t, x).
    Sample at(const Model& m, double t, double x) const;
    double acceleration(const Model& m, double t, double x) const;
    FieldState state(const Model& m, double t, const Grid& g) const;
};

std::string to_string(BackgroundKind k);

struct EvolveConfig {
    double dt = 0.015;
    double t_end = 1.0;  // duration; dt is shrunk so that an integer number of steps lands on it
    Background background;
    int spatial_order = 4;  // 2 or 4
    long stride = 1;        // steps between snapshots
    bool backward = false;  // integrate toward t0 - t_end
    bool log_energy = true;

    double max_dt(double h) const { return (spatial_order == 4 ? 0.85 : 0.9) * h; }
};

struct EvolutionAborted : std::runtime_error {
    EvolutionAborted(const std::string& what, double when) : std::runtime_error(what), t(when) {}
    double t;
};

// Snapshots hold the full field phi = background + u.
// `energy` is the modified energy conserved by the kick-drift-kick scheme to O(dt^4),
// E + dt^2/12 <v, K v> - dt^2/24 |F|^2 with K the Hessian of the potential energy and F the force;
// `energy_raw` is the plain functional, which oscillates at O(dt^2).
struct Trajectory {
    std::vector<FieldState> snapshots;
    std::vector<double> energy;
    std::vector<double> energy_raw;
    std::vector<double> momentum;

    const FieldState& final() const { return snapshots.back(); }
    static double drift(const std::vector<double>& e);  // max |E - E0| / |E0|
    double energy_drift() const { return drift(energy); }
};

struct SnapshotView {
    const FieldState& full;
    const Field& perturbation;  // phi - background
    const Field& force;         // phi_tt of the full field as seen by the scheme
    double dt;
};

using SnapshotVisitor = std::function<void(const SnapshotView&)>;

double modified_energy(const SnapshotView& s, const Model& m);

// Steppable leapfrog integrator; evolve_visit drives one to completion.
class Integrator {
public:
    Integrator(const FieldState& initial, const Model& model, const EvolveConfig& cfg);
    ~Integrator();
    Integrator(Integrator&&) noexcept;
    Integrator& operator=(Integrator&&) noexcept;

    long total_steps() const;
    long step_index() const;
    bool done() const { return step_index() >= total_steps(); }
    double time() const;
    // Advances one step; throws EvolutionAborted on a non-finite state.
    void step();
    // Full field, perturbation and force at the current step.
    void view(const SnapshotVisitor& visit) const;
    FieldState full_state() const;
    const Field& perturbation() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

void evolve_visit(const FieldState& initial, const Model& model, const EvolveConfig& cfg, const SnapshotVisitor& visit);

Trajectory evolve(const FieldState& initial, const Model& model, const EvolveConfig& cfg);

// Negates the rate; evolving the reversed state forward equals evolving backward.
FieldState reversed(const FieldState& s);

struct Probe {
    std::string name;
    std::function<double(const FieldState& full, const Field& perturbation)> eval;
};

Probe energy_probe(const Model& m);
Probe momentum_probe();
// H1 x L2 norm of the perturbation pair (u, u_t - background_t) on [a, b].
Probe local_norm_probe(const Background& bg, const Model& m, double a, double b, const std::string& name = "local_norm_I");
Probe weighted_norm_probe(const Background& bg, const Model& m, const WeightSpec& w,
                          const std::string& name = "weighted_norm");

struct ProbeSeries {
    std::vector<double> t;
    std::map<std::string, std::vector<double>> values;
};

ProbeSeries evolve_probe(const FieldState& initial, const Model& model, const EvolveConfig& cfg,
                         const std::vector<Probe>& probes);
ProbeSeries evolve_probe(const SolutionSampler& initial, double t0, const Grid& g, const Model& model,
                         const EvolveConfig& cfg, const std::vector<Probe>& probes);

}  // namespace sgk
