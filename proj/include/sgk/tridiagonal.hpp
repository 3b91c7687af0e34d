#pragma once

#include "sgk/core.hpp"

namespace sgk {

// Symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
    Field diag;
    Field off;

    long size() const { return diag.size(); }
    Field apply(const Eigen::Ref<const Field>& x) const;
};

// Number of eigenvalues strictly below x (Sturm sequence count).
long sturm_count(const SymTridiagonal& T, double x);

// Gershgorin interval containing the spectrum.
std::pair<double, double> gershgorin(const SymTridiagonal& T);

// Eigenvalues below `upper`, ascending, by bisection on the Sturm count.
std::vector<double> eigenvalues_below(const SymTridiagonal& T, double upper, double tol = 1e-13);

// Solves (T - shift I) x = b with partial pivoting.
Field tridiagonal_solve(const SymTridiagonal& T, double shift, const Eigen::Ref<const Field>& b);

// Unit-norm eigenvector for an accurate eigenvalue estimate.
Field inverse_iteration(const SymTridiagonal& T, double lambda, int iterations = 4);

}  // namespace sgk
