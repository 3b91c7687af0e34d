#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgk {

template <typename Scalar>
using FieldT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Field = FieldT<double>;

inline constexpr double pi = 3.14159265358979323846;

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

struct DiagnosticFailure : std::runtime_error {
    DiagnosticFailure(const std::string& what, long node)
        : std::runtime_error(what), node_index(node) {}
    long node_index;
};

struct Grid {
    double x_min = -40.0;
    double x_max = 40.0;
    long n = 4001;

    Grid() = default;
    Grid(double lo, double hi, long points) : x_min(lo), x_max(hi), n(points) {
        if (!(lo < hi)) throw ParameterError("grid: x_min must be below x_max");
        if (points < 3) throw ParameterError("grid: need at least 3 points");
    }

    static Grid symmetric(double half_width, double h) {
        long half = std::lround(half_width / h);
        return Grid(-half * h, half * h, 2 * half + 1);
    }

    double h() const { return (x_max - x_min) / double(n - 1); }
    double x(long i) const { return x_min + double(i) * h(); }
    Field nodes() const { return Field::LinSpaced(n, x_min, x_max); }

    bool is_symmetric() const {
        return n % 2 == 1 && std::abs(x_min + x_max) <= 1e-12 * (x_max - x_min);
    }
    long center() const { return (n - 1) / 2; }
    long nearest(double xv) const {
        long i = std::lround((xv - x_min) / h());
        return std::clamp<long>(i, 0, n - 1);
    }

    bool operator==(const Grid& o) const { return x_min == o.x_min && x_max == o.x_max && n == o.n; }
};

inline void require_symmetric(const Grid& g, const char* who) {
    if (!g.is_symmetric())
        throw ContractViolation(std::string(who) + ": grid must be symmetric with a node at x = 0");
}

template <class Derived>
void require_length(const Eigen::MatrixBase<Derived>& f, const Grid& g, const char* who) {
    if (f.size() != g.n) throw ContractViolation(std::string(who) + ": length does not match grid");
}

struct FieldState {
    double t = 0.0;
    Grid grid;
    Field u;
    Field v;

    FieldState() = default;
    FieldState(double time, const Grid& g, Field value, Field rate)
        : t(time), grid(g), u(std::move(value)), v(std::move(rate)) {
        require_length(u, grid, "FieldState");
        require_length(v, grid, "FieldState");
        if (!u.allFinite() || !v.allFinite()) throw ContractViolation("FieldState: non-finite entry");
    }
};

enum class Parity { odd_odd, odd_even, even_even, even_odd, none };

std::string to_string(Parity p);

enum class Symmetry { odd, even };

struct PerturbationPair {
    Grid grid;
    Field first;
    Field second;
    Parity tag = Parity::none;

    PerturbationPair() = default;
    // Checks the declared parity against `tol`; pass Parity::none to skip.
    PerturbationPair(const Grid& g, Field a, Field b, Parity p = Parity::none, double tol = 1e-9);
};

enum class ModelKind { sine_gordon, phi4 };

struct Model {
    ModelKind kind = ModelKind::sine_gordon;

    static Model sine_gordon() { return {ModelKind::sine_gordon}; }
    static Model phi4() { return {ModelKind::phi4}; }

    double N(double p) const { return kind == ModelKind::sine_gordon ? std::sin(p) : -p + p * p * p; }
    double dN(double p) const { return kind == ModelKind::sine_gordon ? std::cos(p) : -1.0 + 3.0 * p * p; }
    double V(double p) const {
        if (kind == ModelKind::sine_gordon) return 1.0 - std::cos(p);
        double w = 1.0 - p * p;
        return 0.25 * w * w;
    }
    std::string name() const { return kind == ModelKind::sine_gordon ? "sine-Gordon" : "phi4"; }
};

struct WeightSpec {
    double rate = 0.5;
    double center = 0.0;
};

}  // namespace sgk
