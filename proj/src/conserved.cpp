#include "sgk/conserved.hpp"

#include "sgk/field_ops.hpp"

namespace sgk {

double TopologicalState::boundary_defect() const {
    const Field& u = state.u;
    return std::max(std::abs(u[0] - left_limit), std::abs(u[u.size() - 1] - right_limit));
}

double energy(const FieldState& s, const Model& model, int order) {
    const Field ux = derivative(s.u, s.grid, order);
    Field density = 0.5 * (ux.cwiseAbs2() + s.v.cwiseAbs2());
    for (long i = 0; i < s.grid.n; ++i) density[i] += model.V(s.u[i]);
    return quadrature(density, s.grid);
}

EnergyReport energy_checked(const FieldState& s, const Model& model, double tol, int order) {
    EnergyReport r;
    r.value = energy(s, model, order);
    const Field ux = derivative(s.u, s.grid, order);
    const long n = s.grid.n;
    double edge = 0.0;
    for (long i : {0L, n - 1}) {
        double d = 0.5 * (ux[i] * ux[i] + s.v[i] * s.v[i]) + model.V(s.u[i]);
        edge = std::max(edge, d);
    }
    r.truncation_estimate = edge;
    r.decayed = edge <= tol;
    return r;
}

double momentum(const FieldState& s, int order) {
    const Field ux = derivative(s.u, s.grid, order);
    return 0.5 * quadrature(s.v.cwiseProduct(ux), s.grid);
}

double manifold_momentum(double delta) {
    if (!(1.0 + delta > 0.0)) throw ParameterError("manifold_momentum: need 1 + delta > 0");
    const double a = 1.0 + delta;
    return 2.0 * (1.0 / a - a);
}

}  // namespace sgk
