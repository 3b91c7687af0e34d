#include "sgk/conserved.hpp"
#include "sgk/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("kink energy and momentum") {
    const Grid g = Grid::symmetric(40.0, 0.01);
    CHECK(energy(kink({0.0, 0.0}).state(0.0, g), Model::sine_gordon()) == doctest::Approx(8.0).epsilon(1e-10));
    const double b = 0.6, gam = 1.25;
    const FieldState m = kink({b, 0.0}).state(0.0, g);
    CHECK(energy(m, Model::sine_gordon()) == doctest::Approx(8.0 * gam).epsilon(1e-9));
    CHECK(momentum(m) == doctest::Approx(-4.0 * b * gam).epsilon(1e-9));
}

TEST_CASE("phi4 kink energy is 2 sqrt(2) / 3") {
    const Grid g = Grid::symmetric(40.0, 0.01);
    CHECK(energy(phi4_kink().state(0.0, g), Model::phi4()) == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("manifold momentum formula") {
    CHECK(manifold_momentum(0.0) == doctest::Approx(0.0));
    CHECK(manifold_momentum(0.1) == doctest::Approx(2.0 * (1.0 / 1.1 - 1.1)));
    CHECK(manifold_momentum(-0.2) > 0.0);
}

TEST_CASE("truncated kink reports undecayed energy") {
    const Grid g = Grid::symmetric(3.0, 0.01);
    EnergyReport r = energy_checked(kink({0.0, 0.0}).state(0.0, g), Model::sine_gordon());
    CHECK_FALSE(r.decayed);
}
