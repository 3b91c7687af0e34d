#include "sgk/modulation.hpp"
#include "sgk/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("shift of a translated kink is recovered") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    for (double shift : {-0.2, 0.0, 0.35}) {
        const FieldState s = kink({0.0, -shift}).state(0.0, g);
        CHECK(solve_shift(s, 0.0, 0.0) == doctest::Approx(shift).epsilon(1e-8));
    }
}

TEST_CASE("moving kink has zero shift in its own frame") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    const FieldState s = kink({0.4, 0.0}).state(2.0, g);
    CHECK(std::abs(solve_shift(s, 0.4, 0.1)) < 1e-9);
    CHECK(std::abs(shift_functional(s, 0.4, 0.0)) < 1e-9);
}

TEST_CASE("data far from the kink leaves the tube") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    const FieldState s = zero_solution().state(0.0, g);
    CHECK_THROWS_AS(solve_shift(s, 0.0, 0.0), TubeExit);
}

TEST_CASE("tracker records a static kink as converging") {
    const Grid g = Grid::symmetric(30.0, 0.05);
    ModulationTracker tr(0.0);
    for (int k = 0; k < 5; ++k) {
        const FieldState s = kink({0.0, 0.0}).state(double(k), g);
        CHECK(tr.observe(s));
    }
    tr.finish();
    REQUIRE(tr.records().size() == 5);
    CHECK(std::abs(tr.records().back().rho) < 1e-10);
    CHECK(convergence_classifier(tr.records()).kind == ConvergenceKind::bounded_converging);
}

TEST_CASE("shifts below the Newton tolerance are still resolved") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    for (double shift : {1e-11, 3e-11}) {
        const FieldState s = kink({0.0, -shift}).state(0.0, g);
        CHECK(std::abs(solve_shift(s, 0.0, 0.0) - shift) < 1e-14);
    }
}
