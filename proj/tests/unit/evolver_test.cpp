#include "sgk/conserved.hpp"
#include "sgk/evolver.hpp"
#include "sgk/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("static kink stays a fixed point") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    EvolveConfig c;
    c.t_end = 5.0;
    c.stride = 1000;
    c.background = Background::static_kink();
    Trajectory tr = evolve(kink({0.0, 0.0}).state(0.0, g), Model::sine_gordon(), c);
    const FieldState& f = tr.final();
    CHECK(f.t == doctest::Approx(5.0));
    CHECK((f.u - kink({0.0, 0.0}).state(0.0, g).u).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("moving kink tracks the closed form") {
    const Grid g = Grid::symmetric(40.0, 0.02);
    EvolveConfig c;
    c.t_end = 10.0;
    c.stride = 10000;
    c.background = Background::moving_kink(0.5);
    FieldState perturbed = kink({0.5, 0.0}).state(0.0, g);
    Trajectory tr = evolve(perturbed, Model::sine_gordon(), c);
    CHECK((tr.final().u - kink({0.5, 0.0}).state(10.0, g).u).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("breather energy is conserved") {
    const Grid g = Grid::symmetric(40.0, 0.02);
    EvolveConfig c;
    c.t_end = 10.0;
    c.stride = 20;
    Trajectory tr = evolve(breather(0.5).state(0.0, g), Model::sine_gordon(), c);
    CHECK(tr.energy_drift() < 1e-6);
    CHECK((tr.final().u - breather(0.5).state(tr.final().t, g).u).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("reversal negates the rate only") {
    const Grid g = Grid::symmetric(10.0, 0.1);
    const FieldState s = kink({0.3, 0.0}).state(0.0, g);
    const FieldState r = reversed(s);
    CHECK(r.u == s.u);
    CHECK(r.v == -s.v);
}

TEST_CASE("unstable step sizes are refused") {
    const Grid g = Grid::symmetric(10.0, 0.02);
    EvolveConfig c;
    c.dt = 0.1;
    CHECK_THROWS(evolve(kink({0.0, 0.0}).state(0.0, g), Model::sine_gordon(), c));
}
