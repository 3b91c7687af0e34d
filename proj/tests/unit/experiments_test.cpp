#include "sgk/conserved.hpp"
#include "sgk/experiments.hpp"
#include "sgk/field_ops.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("random profiles: parity, unit norm, determinism") {
    const Grid g = Grid::symmetric(20.0, 0.02);
    for (auto kind : {Symmetry::odd, Symmetry::even}) {
        Field a = random_profile(g, 5, kind), b = random_profile(g, 5, kind), c = random_profile(g, 6, kind);
        CHECK(parity_check(a, g, kind) < 1e-12);
        CHECK(energy_norm(PerturbationPair(g, a, Field::Zero(g.n)), functional_order) == doctest::Approx(1.0));
        CHECK(a == b);
        CHECK(a != c);
    }
}

TEST_CASE("log-log slope of a power law") {
    std::vector<double> x{0.1, 0.2, 0.4, 0.8}, y;
    for (double v : x) y.push_back(3.0 * v * v * v);
    CHECK(loglog_slope(x, y) == doctest::Approx(3.0));
}

TEST_CASE("catalog refinement is second order") {
    for (const auto& e : exact_catalog()) {
        if (e.name != "kink" && e.name != "phi4-kink") continue;
        RefinementResult r = refinement_study(e, {0.04, 0.02, 0.01}, 0.7, 20.0);
        CHECK(r.min_order() > 1.8);
    }
}
