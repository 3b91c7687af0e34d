// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
#include "sgk/config.hpp"
#include "sgk/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>

using namespace sgk;

namespace {

const std::map<std::string, double> pinned{
    {"exact_order", 1.9},       {"exact_residual", 1e-5},   {"bt_residual", 5e-6},     {"lbt_residual", 5e-6},
    {"eigen_error", 2e-3},      {"spectrum_order", 1.8},    {"absent_window", 1.3},    {"phi_zero", 1e-12},
    {"phi_identity", 1e-8},     {"momentum_identity", 1e-6}, {"final_speed", 1e-12},   {"round_trip", 1e-7},
    {"parity", 1e-9},           {"lift_residual", 1e-9},    {"orthogonality", 1e-8},   {"kink_energy", 1e-8},
    {"energy_drift", 1e-5},     {"reversal", 1e-9},         {"period", 1e-4},          {"orbit_constant", 3.0},
    {"momentum_zero", 1e-5},    {"rate_slope_center", 2.0}, {"rate_slope_width", 0.3}, {"rate_ratio", 1.0},
    {"local_decay", 0.1},       {"vacuum_tail", 0.05},      {"vacuum_final", 0.1},
};

// Criteria whose failure is a recorded finding: the measured max |rho'| on odd manifold data
// scales like eta^3 because the linear and quadratic contributions vanish by parity.
const std::set<int> known_failures{9};

ExperimentConfig pinned_config(const std::string& command) {
    ExperimentConfig c = default_config(command);
    c.tolerances = pinned;
    return c;
}

struct Criterion {
    int id;
    std::string title;
    std::function<SuiteOutput()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria{
        {1, "exact-solution residuals refine at second order", [] { return exact_suite(pinned_config("verify-exact")); }},
        {2, "nonlinear transformation identities", [] { return bt_suite(pinned_config("verify-bt")); }},
        {3, "linearized transformation pairs and wave checks", [] { return lbt_suite(pinned_config("verify-bt")); }},
        {4, "discrete spectra of the linearized operators", [] { return spectrum_suite(pinned_config("spectrum")); }},
        {5, "manifold constructor identities", [] { return manifold_suite(pinned_config("lift")); }},
        {6, "lift/descent round trips with parity contracts",
         [] {
             ExperimentConfig c = pinned_config("lift");
             c.amplitude = 0.05;
             c.beta = 0.3;
             c.time = 0.9;
             return roundtrip_suite(c);
         }},
        {7, "energy, drift and time reversal", [] { return conservation_suite(pinned_config("evolve")); }},
        {8, "wobbler periodicity and orbital distance",
         [] {
             ExperimentConfig c = pinned_config("stability");
             c.beta = 0.3;
             c.seed = 7;
             return wobbler_suite(c);
         }},
        {9, "asymptotic stability on the zero-momentum manifold",
         [] {
             ExperimentConfig c = pinned_config("stability");
             SuiteOutput o = stability_suite(c);
             o.merge(moving_kink_control(c));
             return o;
         }},
        {10, "odd-data vacuum decay",
         [] {
             ExperimentConfig c = pinned_config("stability");
             c.solution = "vacuum";
             c.seed = 3;
             return vacuum_suite(c);
         }},
    };

    bool unexpected = false;
    for (const Criterion& cr : criteria) {
        if (!only.empty() && !only.count(cr.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            SuiteOutput o = cr.run();
            pass = o.report.all_pass();
            detail = render_text(o.report);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what() + "\n";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool known = known_failures.count(cr.id) > 0;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " ("
                  << format_number(std::round(secs * 10) / 10) << " s)"
                  << (!pass && known ? " [known failure, see notes]" : "") << (pass && known ? " [unexpected pass]" : "")
                  << '\n';
        std::string line;
        for (std::size_t pos = 0; pos < detail.size();) {
            const std::size_t end = detail.find('\n', pos);
            line = detail.substr(pos, end - pos);
            pos = end == std::string::npos ? detail.size() : end + 1;
            if (line.rfind("PASS ", 0) == 0) line = "  ok    " + line.substr(5);
            else if (line.rfind("FAIL ", 0) == 0) line = "  miss  " + line.substr(5);
            else line = "        " + line;
            std::cout << line << '\n';
        }
        std::cout.flush();
        if (pass == known) unexpected = true;
    }
    return unexpected ? EXIT_FAILURE : EXIT_SUCCESS;
}
