#include "sgk/linearized.hpp"
#include "sgk/solutions.hpp"
#include "sgk/tridiagonal.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgk;

TEST_CASE("discrete Laplacian eigenvalues") {
    const long n = 50;
    SymTridiagonal T{Field::Constant(n, 2.0), Field::Constant(n - 1, -1.0)};
    std::vector<double> ev = eigenvalues_below(T, 1.05);
    long expected = 0;
    for (long k = 1; k <= n; ++k) {
        const double lam = 2.0 - 2.0 * std::cos(k * pi / double(n + 1));
        if (lam < 1.05) {
            REQUIRE(size_t(expected) < ev.size());
            CHECK(ev[size_t(expected)] == doctest::Approx(lam).epsilon(1e-12));
            ++expected;
        }
    }
    CHECK(long(ev.size()) == expected);
    CHECK(sturm_count(T, 1.05) == expected);
}

TEST_CASE("tridiagonal solve inverts apply") {
    const long n = 20;
    SymTridiagonal T{Field::LinSpaced(n, 3.0, 5.0), Field::Constant(n - 1, 0.7)};
    Field x = Field::LinSpaced(n, -1.0, 2.0);
    CHECK((tridiagonal_solve(T, 0.0, T.apply(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("harmonic oscillator levels") {
    const SchrodingerOperator op{[](double x) { return x * x; }, 6.0, "harmonic"};
    std::vector<Eigenpair> ev = discrete_spectrum(op, Grid(-10.0, 10.0, 4001));
    REQUIRE(ev.size() == 3);
    for (size_t k = 0; k < 3; ++k) CHECK(ev[k].value == doctest::Approx(2.0 * k + 1.0).epsilon(1e-4));
}

TEST_CASE("kink operators: potentials and discrete spectra") {
    const SchrodingerOperator q = sg_kink_operator();
    CHECK(q.potential(0.0) == doctest::Approx(-1.0));
    CHECK(q.potential(30.0) == doctest::Approx(1.0));
    const Grid g(-40.0, 40.0, 4001);
    auto lq = discrete_spectrum(q, g);
    REQUIRE(lq.size() == 1);
    CHECK(std::abs(lq[0].value) < 2e-3);
    auto lh = discrete_spectrum(phi4_kink_operator(), g);
    REQUIRE(lh.size() == 2);
    CHECK(lh[1].value == doctest::Approx(1.5).epsilon(2e-3));
    auto ld = discrete_spectrum(phi4_dual_operator(), g);
    REQUIRE(ld.size() == 1);
    CHECK(ld[0].value == doctest::Approx(1.5).epsilon(2e-3));
}

TEST_CASE("kernel mode satisfies the wave equation") {
    const Grid g = Grid::symmetric(20.0, 0.02);
    CHECK(wave_residual(linear_mode("Qprime"), sg_kink_operator(), 0.5, g, 1e-3).max_abs() < 1e-6);
}
