#include "sgk/backlund.hpp"

#include "sgk/field_ops.hpp"

#include <sstream>

namespace sgk {

namespace {

double log_cosh(double z) {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

void require_grid(const Grid& a, const Grid& b, const char* who) {
    if (!(a == b)) throw ContractViolation(std::string(who) + ": grids differ");
}

void require_parity(const Eigen::Ref<const Field>& f, const Grid& g, Symmetry s, const char* who, double tol = 1e-9) {
    const double d = parity_check(f, g, s);
    if (d > tol) {
        std::ostringstream os;
        os << who << ": input parity violated (" << d << ")";
        throw ContractViolation(os.str());
    }
}

struct Halves {
    Field plus, minus;  // cos of the two half-angle combinations
};

Halves half_angles(const BtBackground& bg, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& y) {
    const long n = bg.grid.n;
    Halves c{Field(n), Field(n)};
    for (long i = 0; i < n; ++i) {
        c.plus[i] = std::cos(0.5 * (bg.K[i] + u[i] + bg.Z[i] + y[i]));
        c.minus[i] = std::cos(0.5 * (bg.K[i] + u[i] - bg.Z[i] - y[i]));
    }
    return c;
}

double increment(const Field& a, const Field& b) { return (a - b).cwiseAbs().maxCoeff(); }

[[noreturn]] void fail(const char* who, const std::vector<double>& history) {
    std::ostringstream os;
    os << who << ": no convergence after " << history.size() << " iterations (last increment "
       << (history.empty() ? 0.0 : history.back()) << ")";
    throw SolverFailure(os.str(), history);
}

bool diverging(const std::vector<double>& h) {
    if (!std::isfinite(h.back())) return true;
    const size_t k = h.size();
    return k >= 4 && h[k - 1] > h[k - 2] && h[k - 2] > h[k - 3] && h[k - 3] > h[k - 4];
}

Field read_second(const BtBackground& bg, const Field& u, const Eigen::Ref<const Field>& y, int order) {
    Halves c = half_angles(bg, u, y);
    Field yx = derivative(y, bg.grid, order);
    return bg.Zx + yx - bg.Kt + c.plus / bg.a - bg.a * c.minus;
}

}  // namespace

Residual2 bt_residual(const FieldState& phi, const FieldState& psi, BtParameter a, int order) {
    require_grid(phi.grid, psi.grid, "bt_residual");
    const Grid& g = phi.grid;
    Field psi_x = derivative(psi.u, g, order);
    Field phi_x = derivative(phi.u, g, order);
    Residual2 r{Field(g.n), Field(g.n)};
    for (long i = 0; i < g.n; ++i) {
        const double sp = std::sin(0.5 * (psi.u[i] + phi.u[i]));
        const double sm = std::sin(0.5 * (psi.u[i] - phi.u[i]));
        r.first[i] = psi_x[i] - phi.v[i] - sp / a.a - a.a * sm;
        r.second[i] = psi.v[i] - phi_x[i] - sp / a.a + a.a * sm;
    }
    return r;
}

BtBackground BtBackground::kink(const Grid& g, const KinkProfile& q, double a) {
    if (a == 0.0) throw ParameterError("BtBackground: a must be nonzero");
    BtBackground bg;
    bg.grid = g;
    bg.a = a;
    bg.K = q.sample(&KinkProfile::Qtilde, g);
    bg.Kx = q.sample(&KinkProfile::Qx, g);
    bg.Kt = q.sample(&KinkProfile::Qt, g);
    bg.Z = bg.Zx = bg.Zt = Field::Zero(g.n);
    const double nu = 0.5 * (1.0 / a + a);
    bg.coef = nu * q.sample(&KinkProfile::sin_half, g);
    bg.lift_log_factor.resize(g.n);
    for (long i = 0; i < g.n; ++i) bg.lift_log_factor[i] = nu / q.gamma * log_cosh(q.z(g.x(i)));
    return bg;
}

BtBackground BtBackground::wobbler_breather(const Grid& g, double beta, double t) {
    if (!(beta != 0.0 && std::abs(beta) < 1.0)) throw ParameterError("wobbler background: need 0 < |beta| < 1");
    require_symmetric(g, "wobbler background");
    BtBackground bg;
    bg.grid = g;
    bg.a = 1.0;
    const long n = g.n;
    bg.K.resize(n), bg.Kx.resize(n), bg.Kt.resize(n);
    bg.Z.resize(n), bg.Zx.resize(n), bg.Zt.resize(n);
    bg.coef.resize(n);
    const KinkProfile q(0.0, 0.0);
    for (long i = 0; i < n; ++i) {
        const double x = g.x(i);
        WaveValue w = wobbler_perturbation(beta, t, x);
        WaveValue b = breather_eval(beta, t, x);
        bg.K[i] = q.Qtilde(x) + w.value;
        bg.Kx[i] = q.Qx(x) + w.x;
        bg.Kt[i] = w.t;
        bg.Z[i] = b.value;
        bg.Zx[i] = b.x;
        bg.Zt[i] = b.t;
        bg.coef[i] = std::sin(0.5 * bg.K[i]) * std::cos(0.5 * b.value);
    }
    bg.lift_log_factor = cumulative_integral(bg.coef, g, g.center());
    return bg;
}

Residual2 perturbed_residual(const BtBackground& bg, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                             const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v, int order) {
    const Grid& g = bg.grid;
    for (auto* f : {&u, &s, &y, &v}) require_length(*f, g, "perturbed_residual");
    Halves c = half_angles(bg, u, y);
    Field ux = derivative(u, g, order);
    Field yx = derivative(y, g, order);
    Residual2 r;
    r.first = bg.Kx + ux - bg.Zt - v - c.plus / bg.a - bg.a * c.minus;
    r.second = bg.Kt + s - bg.Zx - yx - c.plus / bg.a + bg.a * c.minus;
    return r;
}

Residual2 tilde_residual(const PerturbationPair& us, const PerturbationPair& yv, double delta, const KinkProfile& q,
                         int order) {
    require_grid(us.grid, yv.grid, "tilde_residual");
    const double a = BtParameter::from_beta(q.beta).a + delta;
    if (a == 0.0) throw ParameterError("tilde_residual: a(beta) + delta must be nonzero");
    BtBackground bg = BtBackground::kink(us.grid, q, a);
    return perturbed_residual(bg, us.first, us.second, yv.first, yv.second, order);
}

namespace {

// Chord iteration for F1 = 0 in u. `adjust` may add a homogeneous component after each step.
template <class Adjust>
LiftReport lift_core(const BtBackground& bg, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                     long anchor, Parity tag, const SolverOptions& opt, Adjust&& adjust) {
    const Grid& g = bg.grid;
    require_length(y, g, "lift");
    require_length(v, g, "lift");
    const long n = g.n;
    Field u = Field::Zero(n);
    LiftReport rep;
    for (int k = 0; k < opt.max_iterations; ++k) {
        Halves c = half_angles(bg, u, y);
        Field rhs = bg.Zt + v - bg.Kx + c.plus / bg.a + bg.a * c.minus + bg.coef.cwiseProduct(u);
        Field next = solve_outward(bg.lift_log_factor, rhs, g, anchor);
        adjust(next, rep);
        rep.history.push_back(increment(next, u));
        u = std::move(next);
        rep.iterations = k + 1;
        if (rep.history.back() <= opt.tol) break;
        if (diverging(rep.history)) fail("lift", rep.history);
        if (k + 1 == opt.max_iterations) fail("lift", rep.history);
    }
    Field s = read_second(bg, u, y, opt.order);
    rep.final_residual = perturbed_residual(bg, u, s, y, v, opt.order).max_abs();
    rep.result = PerturbationPair(g, std::move(u), std::move(s), tag);
    return rep;
}

}  // namespace

LiftReport lift_generic(const BtBackground& bg, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                        long anchor, Parity out_tag, const SolverOptions& opt) {
    return lift_core(bg, y, v, anchor, out_tag, opt, [](Field&, LiftReport&) {});
}

LiftReport descend_generic(const BtBackground& bg, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                           Parity out_tag, const SolverOptions& opt) {
    const Grid& g = bg.grid;
    require_length(u, g, "descend");
    require_length(s, g, "descend");
    const long n = g.n;
    const long meet = g.is_symmetric() ? g.center() : g.nearest(0.0);
    Field Lambda = -bg.lift_log_factor;
    Field y = Field::Zero(n);
    LiftReport rep;
    for (int k = 0; k < opt.max_iterations; ++k) {
        Halves c = half_angles(bg, u, y);
        Field rhs = bg.Kt + s - bg.Zx - c.plus / bg.a + bg.a * c.minus - bg.coef.cwiseProduct(y);
        InwardSolve sol = solve_inward(Lambda, rhs, g, meet);
        rep.compatibility = std::max(rep.compatibility, std::abs(sol.mismatch));
        if (std::abs(sol.mismatch) > opt.compatibility_tol) {
            std::ostringstream os;
            os << "descend: compatibility defect " << sol.mismatch << " (input parity corrupted?)";
            throw ContractViolation(os.str());
        }
        rep.history.push_back(increment(sol.w, y));
        y = std::move(sol.w);
        rep.iterations = k + 1;
        if (rep.history.back() <= opt.tol) break;
        if (diverging(rep.history)) fail("descend", rep.history);
        if (k + 1 == opt.max_iterations) fail("descend", rep.history);
    }
    Halves c = half_angles(bg, u, y);
    Field ux = derivative(u, g, opt.order);
    Field v = bg.Kx + ux - bg.Zt - c.plus / bg.a - bg.a * c.minus;
    rep.final_residual = perturbed_residual(bg, u, s, y, v, opt.order).max_abs();
    rep.result = PerturbationPair(g, std::move(y), std::move(v), out_tag);
    return rep;
}

LiftReport construct_manifold_data(const Grid& g, const Eigen::Ref<const Field>& y0, const Eigen::Ref<const Field>& v0,
                                   double delta, const SolverOptions& opt) {
    if (!(1.0 + delta > 0.0)) throw ParameterError("construct_manifold_data: need 1 + delta > 0");
    require_symmetric(g, "construct_manifold_data");
    require_length(y0, g, "construct_manifold_data");
    require_length(v0, g, "construct_manifold_data");
    require_parity(y0, g, Symmetry::odd, "construct_manifold_data");
    require_parity(v0, g, Symmetry::even, "construct_manifold_data");
    const double size = energy_norm(PerturbationPair(g, y0, v0), opt.order);
    if (size >= opt.norm_guard) throw ParameterError("construct_manifold_data: data norm exceeds the small-data guard");
    BtBackground bg = BtBackground::kink(g, KinkProfile(0.0, 0.0), 1.0 + delta);
    LiftReport rep = lift_generic(bg, y0, v0, g.center(), Parity::odd_even, opt);
    rep.nu0 = 0.5 * (1.0 / (1.0 + delta) + 1.0 + delta);
    return rep;
}

LiftReport lift_zero_to_kink(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                             const SolverOptions& opt) {
    require_symmetric(g, "lift_zero_to_kink");
    require_length(y, g, "lift_zero_to_kink");
    require_length(v, g, "lift_zero_to_kink");
    require_parity(y, g, Symmetry::even, "lift_zero_to_kink");
    require_parity(v, g, Symmetry::even, "lift_zero_to_kink");
    BtBackground bg = BtBackground::kink(g, KinkProfile(0.0, 0.0), 1.0);
    LiftReport rep = lift_generic(bg, y, v, g.center(), Parity::odd_odd, opt);
    rep.nu0 = 1.0;
    return rep;
}

LiftReport descend_kink_to_zero(const Grid& g, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                                const SolverOptions& opt) {
    require_symmetric(g, "descend_kink_to_zero");
    require_length(u, g, "descend_kink_to_zero");
    require_length(s, g, "descend_kink_to_zero");
    require_parity(u, g, Symmetry::odd, "descend_kink_to_zero");
    require_parity(s, g, Symmetry::odd, "descend_kink_to_zero");
    BtBackground bg = BtBackground::kink(g, KinkProfile(0.0, 0.0), 1.0);
    LiftReport rep = descend_generic(bg, u, s, Parity::even_even, opt);
    rep.nu0 = 1.0;
    return rep;
}

LiftReport lift_breather_to_wobbler(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                                    double beta, double t, const SolverOptions& opt) {
    require_symmetric(g, "lift_breather_to_wobbler");
    require_length(y, g, "lift_breather_to_wobbler");
    require_length(v, g, "lift_breather_to_wobbler");
    require_parity(y, g, Symmetry::even, "lift_breather_to_wobbler");
    require_parity(v, g, Symmetry::even, "lift_breather_to_wobbler");
    BtBackground bg = BtBackground::wobbler_breather(g, beta, t);
    LiftReport rep = lift_generic(bg, y, v, g.center(), Parity::odd_odd, opt);
    rep.nu0 = 1.0;
    return rep;
}

LiftReport descend_wobbler_to_breather(const Grid& g, const Eigen::Ref<const Field>& u,
                                       const Eigen::Ref<const Field>& s, double beta, double t,
                                       const SolverOptions& opt) {
    require_symmetric(g, "descend_wobbler_to_breather");
    require_length(u, g, "descend_wobbler_to_breather");
    require_length(s, g, "descend_wobbler_to_breather");
    require_parity(u, g, Symmetry::odd, "descend_wobbler_to_breather");
    require_parity(s, g, Symmetry::odd, "descend_wobbler_to_breather");
    BtBackground bg = BtBackground::wobbler_breather(g, beta, t);
    LiftReport rep = descend_generic(bg, u, s, Parity::even_even, opt);
    rep.nu0 = 1.0;
    return rep;
}

double orthogonality_integral(const Grid& g, const Eigen::Ref<const Field>& u, const Eigen::Ref<const Field>& s,
                              const KinkProfile& q) {
    require_length(u, g, "orthogonality_integral");
    require_length(s, g, "orthogonality_integral");
    Field f(g.n);
    for (long i = 0; i < g.n; ++i) f[i] = u[i] * q.Qx(g.x(i)) + s[i] * q.Qtx(g.x(i));
    return quadrature(f, g);
}

LiftReport lift_with_orthogonality(const Grid& g, const Eigen::Ref<const Field>& y, const Eigen::Ref<const Field>& v,
                                   double delta, double beta, double rho, double t, const SolverOptions& opt) {
    if (!(1.0 + delta > 0.0)) throw ParameterError("lift_with_orthogonality: need 1 + delta > 0");
    const KinkProfile q(beta, beta * t + rho);
    const double center = q.center;
    if (center < g.x_min || center > g.x_max) throw ContractViolation("lift_with_orthogonality: kink center off grid");
    BtBackground bg = BtBackground::kink(g, q, 1.0 + delta);
    const long anchor = g.nearest(center);
    Field hom = (-(bg.lift_log_factor.array() - bg.lift_log_factor[anchor])).exp().matrix();

    Field qx = q.sample(&KinkProfile::Qx, g), qtx = q.sample(&KinkProfile::Qtx, g);
    const double norm = quadrature(Field(qx.cwiseAbs2() + qtx.cwiseAbs2()), g);
    if (!(norm > 1e-8)) throw ContractViolation("lift_with_orthogonality: degenerate orthogonality normalization");

    auto ortho = [&](const Field& u) {
        Field s = read_second(bg, u, y, opt.order);
        return orthogonality_integral(g, u, s, q);
    };
    double weight = 0.0;
    auto adjust = [&](Field& u, LiftReport&) {
        // secant on the free homogeneous weight
        double c0 = weight, c1 = weight + 1e-3;
        double f0 = ortho(u + c0 * hom), f1 = ortho(u + c1 * hom);
        for (int k = 0; k < 30 && std::abs(f1) > 1e-15 * norm && f1 != f0; ++k) {
            const double c2 = c1 - f1 * (c1 - c0) / (f1 - f0);
            c0 = c1, f0 = f1;
            c1 = c2, f1 = ortho(u + c1 * hom);
        }
        weight = c1;
        u += weight * hom;
    };
    LiftReport rep = lift_core(bg, y, v, anchor, Parity::none, opt, adjust);
    rep.nu0 = 0.5 * (1.0 / (1.0 + delta) + 1.0 + delta) / q.gamma;
    rep.homogeneous_weight = weight;
    rep.orthogonality = orthogonality_integral(g, rep.result.first, rep.result.second, q);
    return rep;
}

double final_speed_from_momentum(double P) { return -P / std::sqrt(P * P + 16.0); }

double final_speed_from_delta(double delta) {
    if (!(1.0 + delta > 0.0)) throw ParameterError("final_speed_from_delta: need 1 + delta > 0");
    const double a2 = (1.0 + delta) * (1.0 + delta);
    return (a2 - 1.0) / (a2 + 1.0);
}

}  // namespace sgk
