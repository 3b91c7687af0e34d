#include "sgk/linearized.hpp"

#include "sgk/field_ops.hpp"

namespace sgk {

namespace {

const double r2 = std::sqrt(2.0);
double sech2(double x) {
    double s = 1.0 / std::cosh(x);
    return s * s;
}

struct Sampled {
    ComplexField value;
    ComplexField rate;
};

Sampled sample(const ModeSampler& m, double t, const Grid& g) {
    Sampled s;
    s.value = {Field(g.n), Field(g.n)};
    s.rate = {Field(g.n), Field(g.n)};
    for (long i = 0; i < g.n; ++i) {
        ModeSample v = m(t, g.x(i));
        s.value.re[i] = v.re;
        s.value.im[i] = v.im;
        s.rate.re[i] = v.re_t;
        s.rate.im[i] = v.im_t;
    }
    return s;
}

Field coefficient(const Grid& g, const std::function<double(double)>& c) {
    Field out(g.n);
    for (long i = 0; i < g.n; ++i) out[i] = c(g.x(i));
    return out;
}

LbtResidual lbt_generic(const ModeSampler& phi, const ModeSampler& psi, double t, const Grid& g, int order,
                        const Field& c, double lam) {
    Sampled p = sample(phi, t, g), q = sample(psi, t, g);
    auto part = [&](const Field& px, const Field& qt, const Field& pv) { return Field(px - qt + c.cwiseProduct(pv)); };
    LbtResidual r;
    r.first.re = part(derivative(p.value.re, g, order), q.rate.re, p.value.re);
    r.first.im = part(derivative(p.value.im, g, order), q.rate.im, p.value.im);
    r.second.re = part(p.rate.re, derivative(q.value.re, g, order), q.value.re);
    r.second.im = part(p.rate.im, derivative(q.value.im, g, order), q.value.im);
    if (lam != 0.0) {
        // + lam i (x_re + i x_im) = -lam x_im + i lam x_re
        r.first.re -= lam * q.value.im;
        r.first.im += lam * q.value.re;
        r.second.re -= lam * p.value.im;
        r.second.im += lam * p.value.re;
    }
    return r;
}

ComplexField wave_generic(const ModeSampler& phi, const Field& V, double t, const Grid& g, double dt, int order) {
    Sampled a = sample(phi, t - dt, g), b = sample(phi, t, g), c = sample(phi, t + dt, g);
    auto one = [&](const Field& m, const Field& z, const Field& p) {
        return Field((p - 2.0 * z + m) / (dt * dt) - second_derivative(z, g, order) + V.cwiseProduct(z));
    };
    return {one(a.value.re, b.value.re, c.value.re), one(a.value.im, b.value.im, c.value.im)};
}

}  // namespace

Field SchrodingerOperator::potential_on(const Grid& g) const { return coefficient(g, potential); }

double SchrodingerOperator::threshold_defect(const Grid& g) const {
    return std::max(std::abs(potential(g.x_min) - continuum_threshold),
                    std::abs(potential(g.x_max) - continuum_threshold));
}

SchrodingerOperator sg_kink_operator() {
    return {[](double x) { return 1.0 - 2.0 * sech2(x); }, 1.0, "L_Q"};
}

SchrodingerOperator phi4_kink_operator() {
    return {[](double x) { return 2.0 - 3.0 * sech2(x / r2); }, 2.0, "L_H"};
}

SchrodingerOperator phi4_dual_operator() {
    return {[](double x) {
                double h = std::tanh(x / r2);
                return 1.0 + h * h;
            },
            2.0, "L_H_dual"};
}

Field apply_operator(const SchrodingerOperator& op, const Eigen::Ref<const Field>& f, const Grid& g) {
    require_length(f, g, "apply_operator");
    return operator_matrix(op, g).apply(f);
}

SymTridiagonal operator_matrix(const SchrodingerOperator& op, const Grid& g) {
    const double ih2 = 1.0 / (g.h() * g.h());
    SymTridiagonal T;
    T.diag = op.potential_on(g).array() + 2.0 * ih2;
    T.off = Field::Constant(g.n - 1, -ih2);
    return T;
}

std::vector<Eigenpair> discrete_spectrum(const SchrodingerOperator& op, const Grid& g, double margin) {
    require_symmetric(g, "discrete_spectrum");
    SymTridiagonal T = operator_matrix(op, g);
    std::vector<Eigenpair> out;
    for (double lam : eigenvalues_below(T, op.continuum_threshold - margin)) {
        Field v = inverse_iteration(T, lam);
        v /= std::sqrt(g.h());
        long k;
        v.cwiseAbs().maxCoeff(&k);
        if (v[k] < 0) v = -v;
        out.push_back({lam, v});
    }
    return out;
}

LbtResidual lbt_residual_sg(const ModeSampler& phi, const ModeSampler& psi, double t, const Grid& g, int order) {
    return lbt_generic(phi, psi, t, g, order, coefficient(g, [](double x) { return std::tanh(x); }), 0.0);
}

LbtResidual lbt_residual_phi4(const ModeSampler& phi, const ModeSampler& psi, double t, const Grid& g, int order) {
    return lbt_generic(phi, psi, t, g, order, coefficient(g, [](double x) { return r2 * std::tanh(x / r2); }), 0.0);
}

LbtResidual lbt_residual_phi4_dual(const ModeSampler& phi, const ModeSampler& psi, int sign, double t,
                                   const Grid& g, int order) {
    if (sign != 1 && sign != -1) throw ParameterError("lbt_residual_phi4_dual: sign must be +1 or -1");
    return lbt_generic(phi, psi, t, g, order, coefficient(g, [](double x) { return std::tanh(x / r2) / r2; }),
                       sign * std::sqrt(1.5));
}

ComplexField wave_residual(const ModeSampler& phi, const SchrodingerOperator& op, double t, const Grid& g,
                           double dt, int order) {
    return wave_generic(phi, op.potential_on(g), t, g, dt, order);
}

ComplexField wave_residual(const ModeSampler& phi, double m2, double t, const Grid& g, double dt, int order) {
    return wave_generic(phi, Field::Constant(g.n, m2), t, g, dt, order);
}

}  // namespace sgk
