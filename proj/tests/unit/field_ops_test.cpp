#include "sgk/conserved.hpp"
#include "sgk/field_ops.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

namespace {

Field sampled(const Grid& g, double (*f)(double)) {
    Field out(g.n);
    for (long i = 0; i < g.n; ++i) out[i] = f(g.x(i));
    return out;
}

double gauss(double x) { return std::exp(-x * x); }
double dgauss(double x) { return -2.0 * x * std::exp(-x * x); }
double ddgauss(double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); }

double derivative_error(double h, int order) {
    const Grid g = Grid::symmetric(6.0, h);
    return (derivative(sampled(g, gauss), g, order) - sampled(g, dgauss)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("central first-derivative weights") {
    auto w = fornberg_weights(0.0, {-1.0, 0.0, 1.0}, 2);
    CHECK(w[1][0] == doctest::Approx(-0.5));
    CHECK(w[1][1] == doctest::Approx(0.0));
    CHECK(w[1][2] == doctest::Approx(0.5));
    CHECK(w[2][0] == doctest::Approx(1.0));
    CHECK(w[2][1] == doctest::Approx(-2.0));
}

TEST_CASE("derivative stencils converge at their nominal order") {
    for (int order : {2, 4, 6}) {
        const double e1 = derivative_error(0.1, order), e2 = derivative_error(0.05, order);
        CHECK(std::log2(e1 / e2) == doctest::Approx(order).epsilon(0.15));
    }
    const Grid g = Grid::symmetric(6.0, 0.02);
    CHECK((second_derivative(sampled(g, gauss), g, 6) - sampled(g, ddgauss)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("trapezoid quadrature of a Gaussian") {
    const Grid g = Grid::symmetric(10.0, 0.05);
    CHECK(quadrature(sampled(g, gauss), g) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK(quadrature_on(sampled(g, gauss), g, 0.0, 10.0) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-10));
}

TEST_CASE("running integral of cos is sin") {
    const Grid g = Grid::symmetric(5.0, 0.01);
    Field c = g.nodes().array().cos().matrix();
    Field s = g.nodes().array().sin().matrix();
    CHECK((cumulative_integral(c, g, g.center()) - s).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("outward sweep reproduces a manufactured solution") {
    // w' + x w = r with w = x exp(-x^2), so r = (1 - x^2) exp(-x^2) and Lambda = x^2 / 2
    const Grid g = Grid::symmetric(6.0, 0.01);
    const Eigen::ArrayXd x = g.nodes().array();
    Field Lambda = (0.5 * x.square()).matrix();
    Field r = ((1.0 - x.square()) * (-x.square()).exp()).matrix();
    Field w = (x * (-x.square()).exp()).matrix();
    CHECK((solve_outward(Lambda, r, g, g.center()) - w).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("parity check separates odd from even") {
    const Grid g = Grid::symmetric(4.0, 0.1);
    Field odd = g.nodes().array().cube().matrix();
    Field even = g.nodes().array().square().matrix();
    CHECK(parity_check(odd, g, Symmetry::odd) < 1e-13);
    CHECK(parity_check(even, g, Symmetry::even) < 1e-13);
    CHECK(parity_check(even, g, Symmetry::odd) > 1.0);
    CHECK_THROWS_AS(parity_check(odd, Grid(-4.0, 5.0, 91), Symmetry::odd), ContractViolation);
}

TEST_CASE("energy norm of a Gaussian") {
    // int e^{-2x^2} + 4x^2 e^{-2x^2} = sqrt(pi/2) (1 + 1)
    const Grid g = Grid::symmetric(8.0, 0.01);
    PerturbationPair p(g, sampled(g, gauss), Field::Zero(g.n));
    CHECK(energy_norm(p, functional_order) == doctest::Approx(std::sqrt(2.0 * std::sqrt(pi / 2))).epsilon(1e-9));
}

TEST_CASE("grids") {
    const Grid g = Grid::symmetric(40.0, 0.02);
    CHECK(g.n == 4001);
    CHECK(g.is_symmetric());
    CHECK(g.x(g.center()) == doctest::Approx(0.0));
    CHECK_THROWS_AS(Grid(1.0, 0.0, 10), ParameterError);
    CHECK_THROWS_AS(FieldState(0.0, g, Field::Zero(3), Field::Zero(3)), ContractViolation);
}
