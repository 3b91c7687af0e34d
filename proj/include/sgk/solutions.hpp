#pragma once

#include "sgk/core.hpp"
#include "sgk/sampler.hpp"

#include <string>
#include <vector>

namespace sgk {

inline double lorentz_gamma(double beta) {
    if (!(std::abs(beta) < 1.0)) throw ParameterError("speed must satisfy |beta| < 1");
    return 1.0 / std::sqrt(1.0 - beta * beta);
}

struct KinkParams {
    double beta = 0.0;
    double x0 = 0.0;
    double gamma() const { return lorentz_gamma(beta); }
};

// Q(x; beta, c) = 4 atan(exp(gamma (x - c))) and its companions, as functions of x.
// The half-angle helpers refer to Qtilde = Q - pi.
struct KinkProfile {
    double beta = 0.0;
    double center = 0.0;
    double gamma = 1.0;

    KinkProfile() = default;
    KinkProfile(double b, double c) : beta(b), center(c), gamma(lorentz_gamma(b)) {}

    double z(double x) const { return gamma * (x - center); }
    double Q(double x) const;
    double Qtilde(double x) const { return 2.0 * std::atan(std::sinh(z(x))); }
    double Qx(double x) const { return 2.0 * gamma / std::cosh(z(x)); }
    double Qt(double x) const { return -beta * Qx(x); }
    double Qxx(double x) const { return -2.0 * gamma * gamma * std::tanh(z(x)) / std::cosh(z(x)); }
    double Qtx(double x) const { return -beta * Qxx(x); }
    double Qtxx(double x) const;
    double Qxxx(double x) const;
    double sin_half(double x) const { return std::tanh(z(x)); }
    double cos_half(double x) const { return 1.0 / std::cosh(z(x)); }

    Field sample(double (KinkProfile::*f)(double) const, const Grid& g) const {
        Field out(g.n);
        for (long i = 0; i < g.n; ++i) out[i] = (this->*f)(g.x(i));
        return out;
    }
};

KinkProfile kink_profile(double beta, double center);

SolutionSampler zero_solution();
SolutionSampler kink(const KinkParams& p);
SolutionSampler breather(double beta);
SolutionSampler wobbler(double beta);
SolutionSampler two_kink(double beta);
SolutionSampler three_soliton(double beta, double v);
SolutionSampler phi4_kink();

// (t, x) -> (phi, phi_t) after the boost (t, x) -> (gamma (t - beta x), gamma (x - beta t)).
SolutionSampler boosted(const SolutionSampler& s, double beta);

struct WaveValue {
    double value = 0.0;
    double t = 0.0;
    double x = 0.0;
};

// Breather with analytic first derivatives.
WaveValue breather_eval(double beta, double t, double x);

// W - Q for the wobbler and the three-soliton, with analytic derivatives.
WaveValue wobbler_perturbation(double beta, double t, double x);
WaveValue three_soliton_perturbation(double beta, double v, double t, double x);

// 4 Arg(U + iV) read literally from the closed form with U, V, reduced to (-pi, pi] * 4.
double wobbler_arg_form(double beta, double t, double x);

// Names: L, M, L-alt, M-alt, Y0, Y1, Y1-sin-pair, Y0-cos-pair, Y1-cos-pair, Y0-sin-pair,
// L4, M4, L4-alt, M4-alt, M4-complex, N4-plus, N4-minus, Qprime, Hprime, R4.
ModeSampler linear_mode(const std::string& name);
std::vector<std::string> linear_mode_names();

}  // namespace sgk
