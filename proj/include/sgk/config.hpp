#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgk {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int config_version = 1;

struct GridSection {
    double half_width = 40.0;
    double h = 0.02;
};

struct EvolveSection {
    double dt = 0.015;
    double t_end = 20.0;
    long stride = 10;
    std::string background = "static-kink";  // none | static-kink | moving-kink
    double beta = 0.0;
    double x0 = 0.0;
    int spatial_order = 4;
};

struct ExperimentConfig {
    int version = config_version;
    std::string experiment = "default";
    std::string model = "sine-gordon";  // sine-gordon | phi4
    std::string solution = "wobbler";   // kink | breather | wobbler | 2-kink | 3-soliton | phi4-kink | manifold
    double beta = 0.3;
    double v = 0.2;
    double t0 = 0.0;
    GridSection grid;
    EvolveSection evolve;
    std::vector<std::string> probes{"energy", "momentum", "local_norm_I", "weighted_norm"};
    std::map<std::string, double> tolerances;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int workers = 1;

    // lift / descend
    std::string map = "zero-to-kink";  // zero-to-kink | kink-to-zero | breather-to-wobbler | wobbler-to-breather | manifold | orthogonal
    std::string input = "random";       // random | zero | exact
    double amplitude = 0.05;
    double delta = 0.0;
    double rho = 0.0;
    double time = 0.0;

    // stability / sweep grids
    std::vector<double> etas{0.02, 0.04, 0.08};
    std::vector<double> deltas{-0.3, -0.2, 0.0, 0.05, 0.1, 0.5, 1.0};
    std::vector<double> betas{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::vector<double> hs{0.04, 0.02, 0.01};
    std::vector<double> vs{0.2, 0.1, 0.05, 0.025};
    std::string sweep = "final-speed";  // final-speed | energy-drift | three-soliton

    // Named tolerance with the built-in default when absent.
    double tol(const std::string& name) const;
    // Upper-bound tolerances divided by 10; lower bounds on orders and slope windows are kept.
    void tighten();
};

const std::map<std::string, double>& default_tolerances();
bool is_lower_bound(const std::string& tolerance_name);

// Defaults for a CLI subcommand: verify-exact, verify-bt, spectrum, lift, descend, evolve, stability, sweep.
ExperimentConfig default_config(const std::string& command);

std::string to_json_string(const ExperimentConfig& c);
// Keys present in `text` override `base`.
ExperimentConfig config_from_json_string(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
void save_config(const ExperimentConfig& c, const std::string& path);

}  // namespace sgk
