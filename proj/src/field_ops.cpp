#include "sgk/field_ops.hpp"

#include <map>
#include <mutex>

namespace sgk {

std::string to_string(Parity p) {
    switch (p) {
        case Parity::odd_odd: return "odd-odd";
        case Parity::odd_even: return "odd-even";
        case Parity::even_even: return "even-even";
        case Parity::even_odd: return "even-odd";
        case Parity::none: return "none";
    }
    return "none";
}

PerturbationPair::PerturbationPair(const Grid& g, Field a, Field b, Parity p, double tol)
    : grid(g), first(std::move(a)), second(std::move(b)), tag(p) {
    require_length(first, grid, "PerturbationPair");
    require_length(second, grid, "PerturbationPair");
    if (tag == Parity::none) return;
    Symmetry s1 = (tag == Parity::odd_odd || tag == Parity::odd_even) ? Symmetry::odd : Symmetry::even;
    Symmetry s2 = (tag == Parity::odd_odd || tag == Parity::even_odd) ? Symmetry::odd : Symmetry::even;
    double d1 = parity_check(first, grid, s1);
    double d2 = parity_check(second, grid, s2);
    if (d1 > tol || d2 > tol)
        throw ContractViolation("PerturbationPair: declared parity " + to_string(tag) + " violated (" +
                                std::to_string(std::max(d1, d2)) + ")");
}

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& xs, int max_deriv) {
    const int n = int(xs.size()) - 1;
    std::vector<std::vector<double>> c(max_deriv + 1, std::vector<double>(n + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, max_deriv);
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {

Stencil build_stencil(int deriv, int order) {
    Stencil s;
    s.deriv = deriv;
    s.order = order;
    s.radius = order / 2;
    std::vector<double> xs;
    for (int k = -s.radius; k <= s.radius; ++k) xs.push_back(k);
    s.interior = fornberg_weights(0.0, xs, deriv)[deriv];
    const int m = order + deriv;
    std::vector<double> edge_nodes;
    for (int j = 0; j < m; ++j) edge_nodes.push_back(j);
    for (int i = 0; i < s.radius; ++i) s.edge.push_back(fornberg_weights(double(i), edge_nodes, deriv)[deriv]);
    return s;
}

}  // namespace

const Stencil& stencil(int deriv, int order) {
    if ((deriv != 1 && deriv != 2) || order < 2 || order > 8 || order % 2)
        throw ParameterError("stencil: derivative 1 or 2, even order 2..8");
    static std::mutex mtx;
    static std::map<std::pair<int, int>, Stencil> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(deriv, order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_stencil(deriv, order)).first;
    return it->second;
}

const std::array<double, 6>& interval_weights(int rel) {
    static const auto table = [] {
        std::array<std::array<double, 6>, 6> t{};
        for (int r = 0; r < 6; ++r) {
            Eigen::Matrix<double, 6, 6> V;
            Eigen::Matrix<double, 6, 1> mom;
            for (int k = 0; k < 6; ++k) {
                for (int j = 0; j < 6; ++j) V(k, j) = std::pow(double(j - r), k);
                mom[k] = 1.0 / (k + 1);
            }
            Eigen::Matrix<double, 6, 1> w = V.fullPivLu().solve(mom);
            for (int j = 0; j < 6; ++j) t[r][j] = w[j];
        }
        return t;
    }();
    if (rel > 0 || rel < -5) throw ContractViolation("interval_weights: offset out of range");
    return table[-rel];
}

namespace {

long window_start(long i, long n) { return std::clamp<long>(i - 2, 0, n - 6); }

// int_{x_i}^{x_{i+1}} of the samples g(j), j in the six-point window.
template <class F>
double interval_integral(long i, long n, double h, F&& g) {
    long s = window_start(i, n);
    const auto& w = interval_weights(int(s - i));
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += w[j] * g(s + j);
    return acc * h;
}

}  // namespace

Field cumulative_integral(const Eigen::Ref<const Field>& f, const Grid& g, long anchor) {
    require_length(f, g, "cumulative_integral");
    if (g.n < 6) throw ContractViolation("cumulative_integral: need at least 6 nodes");
    const long n = g.n;
    const double h = g.h();
    Field F(n);
    F[anchor] = 0.0;
    auto sample = [&](long j) { return f[j]; };
    for (long i = anchor; i < n - 1; ++i) F[i + 1] = F[i] + interval_integral(i, n, h, sample);
    for (long i = anchor; i > 0; --i) F[i - 1] = F[i] - interval_integral(i - 1, n, h, sample);
    return F;
}

Field solve_outward(const Eigen::Ref<const Field>& L, const Eigen::Ref<const Field>& r, const Grid& g, long anchor) {
    require_length(L, g, "solve_outward");
    require_length(r, g, "solve_outward");
    const long n = g.n;
    const double h = g.h();
    Field w(n);
    w[anchor] = 0.0;
    for (long i = anchor; i < n - 1; ++i) {
        const double Lt = L[i + 1];
        w[i + 1] = std::exp(L[i] - Lt) * w[i] + interval_integral(i, n, h, [&](long j) { return std::exp(L[j] - Lt) * r[j]; });
    }
    for (long i = anchor; i > 0; --i) {
        const double Lt = L[i - 1];
        w[i - 1] = std::exp(L[i] - Lt) * w[i] -
                   interval_integral(i - 1, n, h, [&](long j) { return std::exp(L[j] - Lt) * r[j]; });
    }
    return w;
}

InwardSolve solve_inward(const Eigen::Ref<const Field>& L, const Eigen::Ref<const Field>& r, const Grid& g, long meet) {
    require_length(L, g, "solve_inward");
    require_length(r, g, "solve_inward");
    const long n = g.n;
    const double h = g.h();
    InwardSolve out;
    out.w = Field::Zero(n);
    Field& w = out.w;
    double left = 0.0;
    for (long i = 0; i < meet; ++i) {
        const double Lt = L[i + 1];
        left = std::exp(L[i] - Lt) * w[i] +
               interval_integral(i, n, h, [&](long j) { return std::exp(L[j] - Lt) * r[j]; });
        w[i + 1] = left;
    }
    left = w[meet];
    double right = 0.0;
    for (long i = n - 1; i > meet; --i) {
        const double Lt = L[i - 1];
        right = std::exp(L[i] - Lt) * w[i] -
                interval_integral(i - 1, n, h, [&](long j) { return std::exp(L[j] - Lt) * r[j]; });
        if (i - 1 > meet) w[i - 1] = right;
    }
    w[0] = 0.0;
    w[n - 1] = 0.0;
    w[meet] = 0.5 * (left + right);
    out.mismatch = left - right;
    return out;
}

double parity_check(const Eigen::Ref<const Field>& f, const Grid& g, Symmetry kind) {
    require_symmetric(g, "parity_check");
    require_length(f, g, "parity_check");
    const double sign = kind == Symmetry::odd ? 1.0 : -1.0;
    return (f + sign * f.reverse()).cwiseAbs().maxCoeff();
}

double weighted_norm_sq(const PerturbationPair& p, const WeightSpec& w, int order) {
    if (!(w.rate > 0)) throw ParameterError("weighted_norm_sq: rate must be positive");
    const Grid& g = p.grid;
    Field fx = derivative(p.first, g, order);
    Field weight = (-w.rate * (g.nodes().array() - w.center).abs()).exp().matrix();
    Field integrand = weight.cwiseProduct(fx.cwiseAbs2() + p.first.cwiseAbs2() + p.second.cwiseAbs2());
    return quadrature(integrand, g);
}

double local_energy_norm(const PerturbationPair& p, double a, double b, int order) {
    const Grid& g = p.grid;
    Field fx = derivative(p.first, g, order);
    Field integrand = fx.cwiseAbs2() + p.first.cwiseAbs2() + p.second.cwiseAbs2();
    return std::sqrt(quadrature_on(integrand, g, a, b));
}

double energy_norm(const PerturbationPair& p, int order) {
    const Grid& g = p.grid;
    Field fx = derivative(p.first, g, order);
    Field integrand = fx.cwiseAbs2() + p.first.cwiseAbs2() + p.second.cwiseAbs2();
    return std::sqrt(quadrature(integrand, g));
}

Field pde_residual(const SolutionSampler& s, const Model& model, double t, const Grid& g, double dt) {
    if (!(dt > 0)) throw ParameterError("pde_residual: dt must be positive");
    Field prev = s.values(t - dt, g);
    Field cur = s.values(t, g);
    Field next = s.values(t + dt, g);
    for (long i = 0; i < g.n; ++i)
        if (!std::isfinite(prev[i]) || !std::isfinite(cur[i]) || !std::isfinite(next[i]))
            throw DiagnosticFailure("pde_residual: non-finite sample of " + s.label, i);
    Field phi_tt = (next - 2.0 * cur + prev) / (dt * dt);
    Field phi_xx = second_derivative(cur, g, 2);
    Field res(g.n);
    for (long i = 0; i < g.n; ++i) res[i] = phi_tt[i] - phi_xx[i] + model.N(cur[i]);
    return res;
}

}  // namespace sgk
