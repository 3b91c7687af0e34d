#pragma once

#include "sgk/core.hpp"

namespace sgk {

// Default derivative order used inside the functionals.
inline constexpr int functional_order = 6;

struct TopologicalState {
    FieldState state;
    double left_limit = 0.0;
    double right_limit = 0.0;

    // Largest distance of the boundary nodes from the declared limits.
    double boundary_defect() const;
};

struct EnergyReport {
    double value = 0.0;
    double truncation_estimate = 0.0;  // energy density and field slope left at the grid ends
    bool decayed = true;
};

double energy(const FieldState& s, const Model& model, int order = functional_order);
EnergyReport energy_checked(const FieldState& s, const Model& model, double tol = 1e-6,
                            int order = functional_order);

double momentum(const FieldState& s, int order = functional_order);

// 2 (1/(1+delta) - (1+delta)).
double manifold_momentum(double delta);

}  // namespace sgk
