#include "sgk/solutions.hpp"

#include <map>

namespace sgk {

namespace {

// cosh(a) e^{-|a|} and sinh(a) e^{-|a|}
double sc(double a) { return 0.5 * (1.0 + std::exp(-2.0 * std::abs(a))); }
double ss(double a) { return std::copysign(0.5 * (1.0 - std::exp(-2.0 * std::abs(a))), a); }

// atan(num/den) without dividing, valid for any sign of den.
double atan_ratio(double num, double den) {
    return den >= 0.0 ? std::atan2(num, den) : std::atan2(-num, -den);
}

// r / (1 + r^2) without overflow.
double r_over(double r) { return std::abs(r) > 1.0 ? 1.0 / (r + 1.0 / r) : r / (1.0 + r * r); }

double static_kink(double x) {
    return x < 0.0 ? 4.0 * std::atan(std::exp(x)) : 2.0 * pi - 4.0 * std::atan(std::exp(-x));
}

void require_nonzero_speed(double beta, const char* who) {
    if (beta == 0.0 || !(std::abs(beta) < 1.0))
        throw ParameterError(std::string(who) + ": need 0 < |beta| < 1");
}

}  // namespace

double KinkProfile::Q(double x) const {
    double zz = z(x);
    return static_kink(zz);
}

double KinkProfile::Qxxx(double x) const {
    double zz = z(x);
    double s = 1.0 / std::cosh(zz), t = std::tanh(zz);
    return 2.0 * gamma * gamma * gamma * s * (t * t - s * s);
}

double KinkProfile::Qtxx(double x) const { return -beta * Qxxx(x); }

KinkProfile kink_profile(double beta, double center) { return KinkProfile(beta, center); }

SolutionSampler zero_solution() {
    return {[](double, double) { return Sample{0.0, 0.0}; }, "zero"};
}

SolutionSampler kink(const KinkParams& p) {
    const double g = p.gamma();
    const double beta = p.beta, x0 = p.x0;
    return {[=](double t, double x) {
                double zz = g * (x - beta * t + x0);
                return Sample{static_kink(zz), -2.0 * beta * g / std::cosh(zz)};
            },
            "kink(beta=" + std::to_string(beta) + ")"};
}

WaveValue breather_eval(double beta, double t, double x) {
    const double alpha = std::sqrt(1.0 - beta * beta);
    const double sech = 1.0 / std::cosh(beta * x);
    const double st = std::sin(alpha * t), ct = std::cos(alpha * t);
    const double r = beta * st * sech / alpha;
    WaveValue w;
    w.value = 4.0 * std::atan(r);
    const double den = alpha * alpha + beta * beta * st * st * sech * sech;
    w.t = 4.0 * alpha * alpha * beta * ct * sech / den;
    w.x = -4.0 * beta * std::tanh(beta * x) * r / (1.0 + r * r);
    return w;
}

SolutionSampler breather(double beta) {
    require_nonzero_speed(beta, "breather");
    return {[=](double t, double x) {
                WaveValue w = breather_eval(beta, t, x);
                return Sample{w.value, w.t};
            },
            "breather(beta=" + std::to_string(beta) + ")"};
}

WaveValue wobbler_perturbation(double beta, double t, double x) {
    if (!(std::abs(beta) < 1.0)) throw ParameterError("wobbler: need |beta| < 1");
    const double alpha = std::sqrt(1.0 - beta * beta);
    const double bx = beta * x;
    const double ex = std::exp(-std::abs(x)), eb = std::exp(-std::abs(bx));
    const double es = ex * eb;
    const double cx = sc(x), sx = ss(x), cb = sc(bx), sb = ss(bx);
    const double ct = std::cos(alpha * t), st = std::sin(alpha * t);
    const double g = beta * (sx * ct * eb - sb * ex);
    const double h = cx * cb - beta * sx * sb - beta * ct * es;
    const double gt = -alpha * beta * sx * st * eb;
    const double ht = alpha * beta * st * es;
    const double gx = beta * (cx * ct * eb - beta * cb * ex);
    const double hx = alpha * alpha * sx * cb;
    const double den = g * g + h * h;
    WaveValue w;
    w.value = 4.0 * atan_ratio(g, h);
    w.t = 4.0 * (gt * h - g * ht) / den;
    w.x = 4.0 * (gx * h - g * hx) / den;
    return w;
}

SolutionSampler wobbler(double beta) {
    if (!(std::abs(beta) < 1.0)) throw ParameterError("wobbler: need |beta| < 1");
    return {[=](double t, double x) {
                WaveValue w = wobbler_perturbation(beta, t, x);
                return Sample{static_kink(x) + w.value, w.t};
            },
            "wobbler(beta=" + std::to_string(beta) + ")"};
}

double wobbler_arg_form(double beta, double t, double x) {
    const double alpha = std::sqrt(1.0 - beta * beta);
    const double ca = std::cos(alpha * t);
    const double U = std::cosh(beta * x) + beta * std::sinh(beta * x) - beta * std::exp(x) * ca;
    const double V = std::exp(x) * (std::cosh(beta * x) - beta * std::sinh(beta * x) - beta * std::exp(-x) * ca);
    return 4.0 * std::atan2(V, U);
}

SolutionSampler two_kink(double beta) {
    require_nonzero_speed(beta, "two_kink");
    const double g = lorentz_gamma(beta);
    return {[=](double t, double x) {
                const double r = beta * std::sinh(g * x) / std::cosh(g * beta * t);
                const double rt = -g * beta * std::tanh(g * beta * t);
                return Sample{4.0 * std::atan(r), 4.0 * rt * r_over(r)};
            },
            "two_kink(beta=" + std::to_string(beta) + ")"};
}

WaveValue three_soliton_perturbation(double beta, double v, double t, double x) {
    if (!(std::abs(beta) < 1.0) || !(std::abs(v) < 1.0))
        throw ParameterError("three_soliton: need |beta| < 1 and |v| < 1");
    const double alpha = std::sqrt(1.0 - beta * beta);
    const double a = std::sqrt((1.0 + v) / (1.0 - v));
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    const double th = g * alpha * (t - v * x);
    const double sth = std::sin(th), cth = std::cos(th);
    const double y = g * beta * x, zz = g * v * beta * t;
    const double X = std::abs(x), Y = std::abs(y), Z = std::abs(zz);
    const double eX = std::exp(-X), eY = std::exp(-Y), eZ = std::exp(-Z);
    const double cx = sc(x), sx = ss(x), cy = sc(y), sy = ss(y), cz = sc(zz), sz = ss(zz);
    const double a2 = a * a;
    // every quantity below carries a factor exp(-(X + Y + Z))
    const double a1 = ((a2 - 1.0) * cx * sth - 2.0 * a * alpha * cth * sx) * eY * eZ -
                      2.0 * a * alpha * (sz * cy - cz * sy) * eX;
    const double P = (1.0 + a2) * cx * cy - 2.0 * a * beta * sx * sy;
    const double R = 2.0 * a * beta * sx * cy - (1.0 + a2) * cx * sy;
    const double A2 = -2.0 * a * beta * cth * eX * eY * eZ + cz * P + sz * R;
    const double a1t = g * alpha * ((a2 - 1.0) * cx * cth + 2.0 * a * alpha * sth * sx) * eY * eZ -
                       2.0 * a * alpha * g * beta * v * (cz * cy - sz * sy) * eX;
    const double A2t = 2.0 * a * beta * g * alpha * sth * eX * eY * eZ + g * v * beta * (sz * P + cz * R);
    WaveValue w;
    w.value = -4.0 * atan_ratio(beta * a1, alpha * A2);
    w.t = -4.0 * alpha * beta * (a1t * A2 - a1 * A2t) / (alpha * alpha * A2 * A2 + beta * beta * a1 * a1);
    w.x = 0.0;
    return w;
}

SolutionSampler three_soliton(double beta, double v) {
    if (!(std::abs(beta) < 1.0) || !(std::abs(v) < 1.0))
        throw ParameterError("three_soliton: need |beta| < 1 and |v| < 1");
    return {[=](double t, double x) {
                WaveValue w = three_soliton_perturbation(beta, v, t, x);
                return Sample{static_kink(x) + w.value, w.t};
            },
            "three_soliton(beta=" + std::to_string(beta) + ",v=" + std::to_string(v) + ")"};
}

SolutionSampler phi4_kink() {
    return {[](double, double x) { return Sample{std::tanh(x / std::sqrt(2.0)), 0.0}; }, "phi4_kink"};
}

SolutionSampler boosted(const SolutionSampler& s, double beta) {
    const double g = lorentz_gamma(beta);
    auto f = s.eval;
    auto value = [=](double t, double x) { return f(g * (t - beta * x), g * (x - beta * t)).value; };
    return {[=](double t, double x) {
                const double d = 1e-5;
                return Sample{value(t, x), (value(t + d, x) - value(t - d, x)) / (2.0 * d)};
            },
            s.label + ".boosted"};
}

namespace {

const double r2 = std::sqrt(2.0);
const double omega_int = std::sqrt(1.5);

double sech(double x) { return 1.0 / std::cosh(x); }
double Y0f(double x) { return -sech(x / r2) / std::sqrt(3.0); }
double Y1f(double x) { return sech(x / r2) * std::tanh(x / r2); }
double R4f(double x) { return 1.0 - 1.5 * sech(x / r2) * sech(x / r2); }

using Fn = ModeSample (*)(double, double);

ModeSample real(double v, double vt) { return {v, 0.0, vt, 0.0}; }

// N4 = c e^{i sqrt2 t} with c = -i (2 +/- sqrt3).
ModeSample n4(double t, double k) {
    const double w = r2 * t;
    const double c = std::cos(w), s = std::sin(w);
    // -i k (c + i s) = k s - i k c
    return {k * s, -k * c, k * r2 * c, k * r2 * s};
}

const std::map<std::string, Fn>& mode_table() {
    static const std::map<std::string, Fn> table = {
        {"L", [](double t, double x) { return real(std::tanh(x) * std::cos(t), -std::tanh(x) * std::sin(t)); }},
        {"M", [](double t, double) { return real(std::sin(t), std::cos(t)); }},
        {"L-alt", [](double t, double x) { return real(-std::tanh(x) * std::sin(t), -std::tanh(x) * std::cos(t)); }},
        {"M-alt", [](double t, double) { return real(std::cos(t), -std::sin(t)); }},
        {"Qprime", [](double, double x) { return real(2.0 * sech(x), 0.0); }},
        {"Hprime", [](double, double x) { double h = std::tanh(x / r2); return real((1.0 - h * h) / r2, 0.0); }},
        {"R4", [](double, double x) { return real(R4f(x), 0.0); }},
        {"Y0", [](double, double x) { return real(Y0f(x), 0.0); }},
        {"Y1", [](double, double x) { return real(Y1f(x), 0.0); }},
        {"Y1-sin-pair", [](double t, double x) {
             return real(Y1f(x) * std::sin(omega_int * t), omega_int * Y1f(x) * std::cos(omega_int * t));
         }},
        {"Y0-cos-pair", [](double t, double x) {
             return real(Y0f(x) * std::cos(omega_int * t), -omega_int * Y0f(x) * std::sin(omega_int * t));
         }},
        {"Y1-cos-pair", [](double t, double x) {
             return real(Y1f(x) * std::cos(omega_int * t), -omega_int * Y1f(x) * std::sin(omega_int * t));
         }},
        {"Y0-sin-pair", [](double t, double x) {
             return real(-Y0f(x) * std::sin(omega_int * t), -omega_int * Y0f(x) * std::cos(omega_int * t));
         }},
        {"L4", [](double t, double x) {
             return real(-R4f(x) * std::sin(r2 * t), -r2 * R4f(x) * std::cos(r2 * t));
         }},
        {"M4", [](double t, double x) {
             double h = std::tanh(x / r2);
             return real(h * std::cos(r2 * t), -r2 * h * std::sin(r2 * t));
         }},
        {"L4-alt", [](double t, double x) {
             return real(-R4f(x) * std::cos(r2 * t), r2 * R4f(x) * std::sin(r2 * t));
         }},
        {"M4-alt", [](double t, double x) {
             double h = std::tanh(x / r2);
             return real(-h * std::sin(r2 * t), -r2 * h * std::cos(r2 * t));
         }},
        {"M4-complex", [](double t, double x) {
             double h = std::tanh(x / r2), c = std::cos(r2 * t), s = std::sin(r2 * t);
             return ModeSample{h * c, h * s, -r2 * h * s, r2 * h * c};
         }},
        {"N4-plus", [](double t, double) { return n4(t, 2.0 + std::sqrt(3.0)); }},
        {"N4-minus", [](double t, double) { return n4(t, 2.0 - std::sqrt(3.0)); }},
    };
    return table;
}

}  // namespace

ModeSampler linear_mode(const std::string& name) {
    const auto& table = mode_table();
    auto it = table.find(name);
    if (it == table.end()) throw ParameterError("linear_mode: unknown mode '" + name + "'");
    Fn f = it->second;
    const bool cplx = name == "M4-complex" || name == "N4-plus" || name == "N4-minus";
    return {[f](double t, double x) { return f(t, x); }, name, cplx};
}

std::vector<std::string> linear_mode_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : mode_table()) out.push_back(k);
    return out;
}

}  // namespace sgk
