#include "sgk/backlund.hpp"
#include "sgk/conserved.hpp"
#include "sgk/experiments.hpp"
#include "sgk/field_ops.hpp"
#include "sgk/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("transformation parameter and speed") {
    for (double b : {-0.5, 0.0, 0.3, 0.9}) CHECK(BtParameter::from_beta(b).beta() == doctest::Approx(b));
    CHECK_THROWS_AS(BtParameter(0.0), ParameterError);
    CHECK_THROWS_AS(BtParameter::from_beta(1.0), ParameterError);
    CHECK(final_speed_from_delta(0.0) == doctest::Approx(0.0));
    for (double d : {-0.3, 0.1, 1.0})
        CHECK(final_speed_from_momentum(manifold_momentum(d)) == doctest::Approx(final_speed_from_delta(d)).epsilon(1e-12));
}

TEST_CASE("kink is the transform of the vacuum") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    const double b = 0.4;
    FieldState z = zero_solution().state(0.8, g);
    CHECK(bt_residual(z, kink({b, 0.0}).state(0.8, g), BtParameter::from_beta(b)).max_abs() < 1e-8);
    CHECK(bt_residual(z, kink({b, 0.0}).state(0.8, g), BtParameter(1.0)).max_abs() > 0.1);
}

TEST_CASE("lift of zero data is zero") {
    const Grid g = Grid::symmetric(20.0, 0.02);
    LiftReport r = lift_zero_to_kink(g, Field::Zero(g.n), Field::Zero(g.n));
    CHECK(r.result.first.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(r.result.second.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("lift and descent invert each other and keep parity") {
    const Grid g = Grid::symmetric(30.0, 0.02);
    const Field y = 0.05 * random_profile(g, 11, Symmetry::even);
    const Field v = 0.05 * random_profile(g, 12, Symmetry::even);
    LiftReport up = lift_zero_to_kink(g, y, v);
    CHECK(parity_check(up.result.first, g, Symmetry::odd) < 1e-9);
    CHECK(parity_check(up.result.second, g, Symmetry::odd) < 1e-9);
    LiftReport down = descend_kink_to_zero(g, up.result.first, up.result.second);
    CHECK((down.result.first - y).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((down.result.second - v).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("manifold data with zero input is the moving kink minus the static kink") {
    const Grid g = Grid::symmetric(40.0, 0.02);
    const double b = 0.2, d = BtParameter::from_beta(b).a - 1.0;
    LiftReport r = construct_manifold_data(g, Field::Zero(g.n), Field::Zero(g.n), d);
    const KinkProfile q0(0.0, 0.0), qb(b, 0.0);
    Field expect = qb.sample(&KinkProfile::Q, g) - q0.sample(&KinkProfile::Q, g);
    CHECK((r.result.first - expect).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((r.result.second - qb.sample(&KinkProfile::Qt, g)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("oversized data is refused") {
    const Grid g = Grid::symmetric(20.0, 0.02);
    const Field y = 5.0 * random_profile(g, 3, Symmetry::even);
    CHECK_THROWS(lift_zero_to_kink(g, y, y));
}
