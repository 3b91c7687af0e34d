#pragma once

#include "sgk/core.hpp"
#include "sgk/sampler.hpp"
#include "sgk/tridiagonal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sgk {

struct SchrodingerOperator {
    std::function<double(double)> potential;
    double continuum_threshold = 0.0;
    std::string name;

    Field potential_on(const Grid& g) const;
    // |potential - threshold| at the grid ends.
    double threshold_defect(const Grid& g) const;
};

// -d^2 + 1 - 2 sech^2 x
SchrodingerOperator sg_kink_operator();
// -d^2 + 2 - 3 sech^2(x / sqrt 2)
SchrodingerOperator phi4_kink_operator();
// -d^2 + 1 + H^2
SchrodingerOperator phi4_dual_operator();

struct ComplexField {
    Field re;
    Field im;
    double max_abs() const { return (re.cwiseAbs2() + im.cwiseAbs2()).cwiseSqrt().maxCoeff(); }
};

// Three-point -f'' + V f with zero values outside the grid.
Field apply_operator(const SchrodingerOperator& op, const Eigen::Ref<const Field>& f, const Grid& g);

SymTridiagonal operator_matrix(const SchrodingerOperator& op, const Grid& g);

struct Eigenpair {
    double value = 0.0;
    Field vector;  // normalized so that sum(v^2) h = 1
};

std::vector<Eigenpair> discrete_spectrum(const SchrodingerOperator& op, const Grid& g, double margin = 0.05);

struct LbtResidual {
    ComplexField first;
    ComplexField second;
    double max_abs() const { return std::max(first.max_abs(), second.max_abs()); }
};

// phi_x - psi_t + tanh(x) phi and phi_t - psi_x + tanh(x) psi.
LbtResidual lbt_residual_sg(const ModeSampler& phi, const ModeSampler& psi, double t, const Grid& g, int order = 6);
// Same with sqrt(2) H in place of tanh x.
LbtResidual lbt_residual_phi4(const ModeSampler& phi, const ModeSampler& psi, double t, const Grid& g,
                              int order = 6);
// phi_x - psi_t + H phi / sqrt2 + s lambda0 psi and phi_t - psi_x + H psi / sqrt2 + s lambda0 phi,
// lambda0 = i sqrt(3/2), s = +1 for the upper sign.
LbtResidual lbt_residual_phi4_dual(const ModeSampler& phi, const ModeSampler& psi, int sign, double t,
                                   const Grid& g, int order = 6);

// phi_tt + op(phi) with a centered time difference and one-sided edge stencils in space.
ComplexField wave_residual(const ModeSampler& phi, const SchrodingerOperator& op, double t, const Grid& g, double dt,
                           int order = 6);
// phi_tt - phi_xx + m2 phi.
ComplexField wave_residual(const ModeSampler& phi, double m2, double t, const Grid& g, double dt, int order = 6);

}  // namespace sgk
