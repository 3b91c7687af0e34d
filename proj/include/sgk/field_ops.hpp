#pragma once

#include "sgk/core.hpp"
#include "sgk/sampler.hpp"

#include <array>
#include <utility>

namespace sgk {

// Finite-difference weights on unit spacing. Interior rows are centered with
// offsets -r..r; the first r rows use the one-sided block of points 0..m-1.
struct Stencil {
    int deriv = 1;
    int order = 2;
    int radius = 1;
    std::vector<double> interior;
    std::vector<std::vector<double>> edge;
};

// Fornberg's recursion: weights c[k][j] for the k-th derivative at z from nodes xs.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& xs, int max_deriv);

const Stencil& stencil(int deriv, int order);

template <class Derived>
FieldT<typename Derived::Scalar> apply_stencil(const Eigen::MatrixBase<Derived>& f, const Grid& g, const Stencil& s) {
    using S = typename Derived::Scalar;
    require_length(f, g, "derivative");
    const long n = g.n;
    const long r = s.radius;
    const long m = long(s.edge.empty() ? 0 : s.edge[0].size());
    if (n < std::max(m, 2 * r + 1)) throw ContractViolation("derivative: grid too small for stencil");
    const S scale = S(1) / S(std::pow(g.h(), s.deriv));
    const S flip = (s.deriv % 2 == 1) ? S(-1) : S(1);
    FieldT<S> out(n);
    for (long i = r; i < n - r; ++i) {
        S acc = 0;
        for (long k = -r; k <= r; ++k) acc += S(s.interior[k + r]) * f[i + k];
        out[i] = acc * scale;
    }
    for (long i = 0; i < r; ++i) {
        S lo = 0, hi = 0;
        for (long j = 0; j < m; ++j) {
            lo += S(s.edge[i][j]) * f[j];
            hi += S(s.edge[i][j]) * f[n - 1 - j];
        }
        out[i] = lo * scale;
        out[n - 1 - i] = flip * hi * scale;
    }
    return out;
}

// First derivative; order 2 is the centered/one-sided second-order scheme.
template <class Derived>
FieldT<typename Derived::Scalar> derivative(const Eigen::MatrixBase<Derived>& f, const Grid& g, int order = 2) {
    return apply_stencil(f, g, stencil(1, order));
}

template <class Derived>
FieldT<typename Derived::Scalar> second_derivative(const Eigen::MatrixBase<Derived>& f, const Grid& g,
                                                   int order = 2) {
    return apply_stencil(f, g, stencil(2, order));
}

// Trapezoid rule on the uniform grid.
template <class Derived>
typename Derived::Scalar quadrature(const Eigen::MatrixBase<Derived>& f, const Grid& g) {
    require_length(f, g, "quadrature");
    using S = typename Derived::Scalar;
    return S(g.h()) * (f.sum() - S(0.5) * (f[0] + f[g.n - 1]));
}

// Trapezoid over the nodes lying inside [a, b].
template <class Derived>
typename Derived::Scalar quadrature_on(const Eigen::MatrixBase<Derived>& f, const Grid& g, double a, double b) {
    require_length(f, g, "quadrature_on");
    if (a < g.x_min - 1e-12 || b > g.x_max + 1e-12 || !(a < b))
        throw ContractViolation("quadrature_on: interval outside grid");
    long i0 = long(std::ceil((a - g.x_min) / g.h() - 1e-9));
    long i1 = long(std::floor((b - g.x_min) / g.h() + 1e-9));
    using S = typename Derived::Scalar;
    if (i1 <= i0) return S(0);
    auto seg = f.segment(i0, i1 - i0 + 1);
    return S(g.h()) * (seg.sum() - S(0.5) * (seg[0] + seg[seg.size() - 1]));
}

// Weights for integrating over [x_i, x_{i+1}] from six nodes starting at x_{i+rel}.
const std::array<double, 6>& interval_weights(int rel);

// Sixth-order running integral F(x_i) = int_{x_anchor}^{x_i} f.
Field cumulative_integral(const Eigen::Ref<const Field>& f, const Grid& g, long anchor);

// Solves w' + Lambda' w = r with w(x_anchor) = 0, sweeping outward from the anchor.
// Lambda is the log integrating factor sampled on nodes.
Field solve_outward(const Eigen::Ref<const Field>& Lambda, const Eigen::Ref<const Field>& r, const Grid& g,
                    long anchor);

struct InwardSolve {
    Field w;
    double mismatch = 0.0;  // jump at the meeting node between the two sweeps
};

// Solves w' + Lambda' w = r with w = 0 at both ends, sweeping inward to `meet`.
InwardSolve solve_inward(const Eigen::Ref<const Field>& Lambda, const Eigen::Ref<const Field>& r, const Grid& g,
                         long meet);

double parity_check(const Eigen::Ref<const Field>& values, const Grid& g, Symmetry kind);

double weighted_norm_sq(const PerturbationPair& pair, const WeightSpec& w, int order = 2);

double local_energy_norm(const PerturbationPair& pair, double a, double b, int order = 2);

double energy_norm(const PerturbationPair& pair, int order = 2);

// phi_tt - phi_xx + N(phi) from centered differences of the sampler.
Field pde_residual(const SolutionSampler& s, const Model& model, double t, const Grid& g, double dt);

}  // namespace sgk
