#pragma once

#include "sgk/core.hpp"
#include "sgk/solutions.hpp"

#include <optional>
#include <vector>

namespace sgk {

struct BtParameter {
    double a = 1.0;

    explicit BtParameter(double value = 1.0) : a(value) {
        if (a == 0.0 || !std::isfinite(a)) throw ParameterError("BtParameter: a must be finite and nonzero");
    }
    static BtParameter from_beta(double beta) {
        if (!(std::abs(beta) < 1.0)) throw ParameterError("BtParameter: need |beta| < 1");
        return BtParameter(std::sqrt((1.0 + beta) / (1.0 - beta)));
    }
    static BtParameter from_delta(double delta) { return BtParameter(1.0 + delta); }

    double beta() const { return (a * a - 1.0) / (a * a + 1.0); }
    double delta() const { return a - 1.0; }
};

struct Residual2 {
    Field first;
    Field second;
    double max_abs() const { return std::max(first.cwiseAbs().maxCoeff(), second.cwiseAbs().maxCoeff()); }
};

inline constexpr int bt_order = 6;

// F1, F2 of the transformation; psi is the kink-side pair, phi the vacuum-side pair.
Residual2 bt_residual(const FieldState& phi, const FieldState& psi, BtParameter a, int order = bt_order);

// Sampled backgrounds for the perturbed transformation. The kink side is stored as
// Ktilde = K - pi; `lift_log_factor` is the integral of the linearization coefficient.
struct BtBackground {
    Grid grid;
    double a = 1.0;
    Field K, Kx, Kt;
    Field Z, Zx, Zt;
    Field coef;
    Field lift_log_factor;

    static BtBackground kink(const Grid& g, const KinkProfile& q, double a);
    static BtBackground wobbler_breather(const Grid& g, double beta, double t);
};

// Kink-centered residuals with cos((Ktilde + u +/- (Z + y))/2).
Residual2 perturbed_residual(const BtBackground& bg, const Eigen::Ref<const Field>& u,
                             const Eigen::Ref<const Field>& s, const Eigen::Ref<const Field>& y,
                             const Eigen::Ref<const Field>& v, int order = bt_order);

// The functionals around Q(.; beta, center) with parameter a(beta) + delta.
Residual2 tilde_residual(const PerturbationPair& us, const PerturbationPair& yv, double delta, const KinkProfile& q,
                         int order = bt_order);

struct SolverOptions {
    double tol = 1e-12;
    int max_iterations = 50;
    double norm_guard = 0.5;
    double compatibility_tol = 1e-8;
    int order = bt_order;
};

struct LiftReport {
    PerturbationPair result;
    int iterations = 0;
    double final_residual = 0.0;
    double nu0 = 0.0;
    std::vector<double> history;
    double compatibility = 0.0;
    double orthogonality = 0.0;
    double homogeneous_weight = 0.0;
};

// Vacuum-side data -> kink-side perturbation (frozen-Jacobian Newton on F1, then F2 for s).
LiftReport lift_generic(const BtBackground& bg, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                        long anchor, Parity out_tag, const SolverOptions& opt = {});
// Kink-side perturbation -> vacuum-side data (inward sweeps on F2, then F1 for v).
LiftReport descend_generic(const BtBackground& bg, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                           Parity out_tag, const SolverOptions& opt = {});

LiftReport construct_manifold_data(const Grid& g, const Eigen::Ref<const Field>& y0, const Eigen::Ref<const Field>& v0,
                                   double delta, const SolverOptions& opt = {});
LiftReport lift_zero_to_kink(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                             const SolverOptions& opt = {});
LiftReport descend_kink_to_zero(const Grid& g, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                                const SolverOptions& opt = {});
LiftReport lift_breather_to_wobbler(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                                    double beta, double t, const SolverOptions& opt = {});
LiftReport descend_wobbler_to_breather(const Grid& g, const Eigen::Ref<const Field>& u,
                                       const Eigen::Ref<const Field>& s, double beta, double t,
                                       const SolverOptions& opt = {});
LiftReport lift_with_orthogonality(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                                   double delta, double beta, double rho, double t, const SolverOptions& opt = {});

// int (u, s) . (Qtilde_x, Qtilde_tx) for the kink profile q.
double orthogonality_integral(const Grid& g, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                              const KinkProfile& q);

double final_speed_from_momentum(double P);
double final_speed_from_delta(double delta);

}  // namespace sgk
