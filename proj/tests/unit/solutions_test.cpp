#include "sgk/conserved.hpp"
#include "sgk/field_ops.hpp"
#include "sgk/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("moving kink matches 4 atan exp(gamma (x - beta t))") {
    const double b = 0.6, g = 1.25;
    const SolutionSampler k = kink({b, 0.0});
    for (double t : {0.0, 1.5})
        for (double x : {-3.0, 0.2, 2.7}) {
            const double z = g * (x - b * t);
            CHECK(k(t, x).value == doctest::Approx(4.0 * std::atan(std::exp(z))).epsilon(1e-13));
            CHECK(k(t, x).rate == doctest::Approx(-b * 2.0 * g / std::cosh(z)).epsilon(1e-12));
        }
    CHECK(kink({0.0, 0.0})(0.0, 0.0).value == doctest::Approx(pi));
}

TEST_CASE("kink profile forms agree") {
    const KinkProfile q(0.4, 0.3);
    for (double x : {-2.0, 0.3, 1.1}) CHECK(q.Q(x) - q.Qtilde(x) == doctest::Approx(pi));
}

TEST_CASE("speed restrictions") {
    CHECK_THROWS_AS(lorentz_gamma(1.5), ParameterError);
    CHECK_THROWS_AS(wobbler(1.0), ParameterError);
    CHECK(lorentz_gamma(0.6) == doctest::Approx(1.25));
}

TEST_CASE("breather and wobbler limits at the grid ends") {
    const Grid g = Grid::symmetric(40.0, 0.05);
    const FieldState B = breather(0.5).state(0.3, g), W = wobbler(0.3).state(0.3, g);
    CHECK(std::abs(B.u[0]) < 1e-8);
    CHECK(std::abs(B.u[g.n - 1]) < 1e-8);
    // the wobbler's odd part decays only like exp(-beta |x|)
    CHECK(std::abs(W.u[0]) < 1e-4);
    CHECK(std::abs(W.u[g.n - 1] - 2.0 * pi) < 1e-4);
}

TEST_CASE("closed forms solve their equations") {
    const Grid g = Grid::symmetric(30.0, 0.01);
    for (const auto& s : {breather(0.5), wobbler(0.3), two_kink(0.5)}) {
        Field r = pde_residual(s, Model::sine_gordon(), 0.7, g, 0.01);
        CHECK(r.segment(1, g.n - 2).cwiseAbs().maxCoeff() < 1e-4);
    }
    Field r = pde_residual(phi4_kink(), Model::phi4(), 0.0, g, 0.01);
    CHECK(r.segment(1, g.n - 2).cwiseAbs().maxCoeff() < 2e-5);
}

TEST_CASE("phi4 kink is tanh(x / sqrt 2)") {
    for (double x : {-1.0, 0.5, 3.0}) CHECK(phi4_kink()(0.0, x).value == doctest::Approx(std::tanh(x / std::sqrt(2.0))));
}

TEST_CASE("every named mode samples finitely") {
    for (const auto& n : linear_mode_names()) {
        ModeSample m = linear_mode(n)(0.4, 0.7);
        CHECK(std::isfinite(m.re));
        CHECK(std::isfinite(m.im));
    }
    CHECK_THROWS(linear_mode("no-such-mode"));
}
