#pragma once

#include "sgk/core.hpp"
#include "sgk/evolver.hpp"
#include "sgk/solutions.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sgk {

struct TubeExit : std::runtime_error {
    TubeExit(const std::string& what, double when, double dist)
        : std::runtime_error(what), t(when), distance(dist) {}
    double t;
    double distance;
};

struct ShiftOptions {
    double tol = 1e-10;
    int max_iterations = 50;
    double tube_radius = 0.5;
    int order = 6;
};

// Y(rho) = int (phi - Q, phi_t - Q_t) . (Qtilde_x, Qtilde_tx) with the profile centered at beta t + rho.
double shift_functional(const FieldState& s, double beta, double rho);

// Newton on Y(rho) = 0 from rho_guess; throws TubeExit on divergence or when the remainder leaves the tube.
double solve_shift(const FieldState& s, double beta, double rho_guess, const ShiftOptions& opt = {});

// (phi, phi_t) - (Q, Q_t)(.; beta, beta t + rho).
PerturbationPair decompose(const FieldState& s, double beta, double rho);

// Weighted integrals around x = rho entering the shift-rate estimates.
struct BoundTerms {
    double rate_vacuum = 0.0;  // int e^{-(1-eps)|x-rho|} (v^2 + y^2 + y_x^2)
    double rate_mixed = 0.0;   // int e^{-(1+eps)|x-rho|} (u^2 + u_x^2) + int e^{-(1-eps)|x-rho|} (y^2 + y_x^2)
    double gradient_lhs = 0.0, gradient_rhs = 0.0;
    double sech_lhs = 0.0, sech_rhs = 0.0;
    bool has_kink_side = false;
};

// `us` may be empty (grid mismatch is not checked then); it is needed for the mixed, gradient and sech terms.
BoundTerms bound_terms(const PerturbationPair* us, const PerturbationPair& yv, double rho, double eps = 0.1);

struct ModulationRecord {
    double t = 0.0;
    double rho = 0.0;
    double rho_rate = 0.0;
    double ortho_residual = 0.0;
    double lhs_rate = 0.0;
    double rhs_bound = 0.0;
    std::map<std::string, double> local_norms;
    BoundTerms bounds;
};

struct Interval {
    std::string name;
    double a = -5.0, b = 5.0;
};

// Sequential rho tracking with warm starts. After a tube exit further snapshots are ignored.
class ModulationTracker {
public:
    ModulationTracker(double beta, double rho0 = 0.0, ShiftOptions opt = {},
                      std::vector<Interval> intervals = {{"I", -5.0, 5.0}});

    // Returns false once the tube has been left.
    bool observe(const FieldState& s);
    // Fills rho_rate and lhs_rate by centered differences.
    void finish();

    const std::vector<ModulationRecord>& records() const { return records_; }
    std::vector<ModulationRecord>& records() { return records_; }
    const std::vector<PerturbationPair>& remainders() const { return pairs_; }
    std::optional<double> exit_time() const { return exit_; }
    double beta() const { return beta_; }
    void keep_remainders(bool on) { keep_ = on; }

private:
    double beta_;
    double rho_;
    ShiftOptions opt_;
    std::vector<Interval> intervals_;
    std::vector<ModulationRecord> records_;
    std::vector<PerturbationPair> pairs_;
    std::optional<double> exit_;
    bool keep_ = false;
};

// Probe reporting rho; the tracker must outlive the evolution.
Probe modulation_probe(ModulationTracker& tracker);

struct BoundRatio {
    std::string name;
    double max_ratio = 0.0;
    double max_lhs = 0.0;
    double max_rhs = 0.0;
};

struct RhoRateReport {
    double eps = 0.1;
    std::vector<BoundRatio> ratios;  // rate-vacuum, rate-mixed, gradient, sech in that order
    double max_rate = 0.0;
    const BoundRatio& get(const std::string& name) const;
};

// Ratios of |rho'| (or the left sides) to the weighted bounds over records whose `bounds` are filled.
RhoRateReport rho_rate_check(std::vector<ModulationRecord>& records, double floor = 1e-14);
// Same, computing the bounds from stored series first (kink_pairs may be empty).
RhoRateReport rho_rate_check(std::vector<ModulationRecord>& records, const std::vector<PerturbationPair>& zero_pairs,
                             const std::vector<PerturbationPair>& kink_pairs, double eps = 0.1,
                             double floor = 1e-14);

struct StildeReport {
    double identity_residual = 0.0;  // max |s - (y_x - 2 sin(Qtilde/2 + u/2) sin(y/2))|
    double bound_constant = 0.0;     // max |s| / (|y_x| + |y|)
};

StildeReport stilde_bound_check(const PerturbationPair& us, const PerturbationPair& yv, double rho,
                                int order = 6);

enum class ConvergenceKind { bounded_converging, excursion };

struct Classification {
    ConvergenceKind kind = ConvergenceKind::bounded_converging;
    double rho_bar = 0.0;
    double tail_variation = 0.0;
    std::vector<double> excursion_times;
    std::vector<double> local_norm_series;
};

std::string to_string(ConvergenceKind k);

Classification convergence_classifier(const std::vector<ModulationRecord>& records, double variation_tol = 1e-3,
                                      const std::string& interval = "I");

}  // namespace sgk
