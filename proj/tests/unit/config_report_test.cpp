#include "sgk/config.hpp"
#include "sgk/parallel.hpp"
#include "sgk/report.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace sgk;

TEST_CASE("config round trip") {
    ExperimentConfig c = default_config("stability");
    c.beta = 0.45;
    c.seeds = {4, 9};
    c.tolerances["period"] = 3e-4;
    ExperimentConfig r = config_from_json_string(to_json_string(c));
    CHECK(r.beta == 0.45);
    CHECK(r.seeds == std::vector<std::uint64_t>{4, 9});
    CHECK(r.grid.half_width == c.grid.half_width);
    CHECK(r.tol("period") == 3e-4);
    CHECK(to_json_string(r) == to_json_string(c));
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(config_from_json_string("{\"version\": 1, \"bta\": 1}"), ConfigError);
    CHECK_THROWS_AS(config_from_json_string("{\"version\": 2}"), ConfigError);
    CHECK_THROWS_AS(config_from_json_string("{\"version\": 1, \"grid\": {\"hh\": 1}}"), ConfigError);
    CHECK_THROWS_AS(config_from_json_string("{\"version\": 1, \"tolerances\": {\"nope\": 1}}"), ConfigError);
    CHECK_THROWS_AS(config_from_json_string("{not json"), ConfigError);
    CHECK_THROWS_AS(default_config("launch"), ConfigError);
}

TEST_CASE("partial config keeps the base") {
    ExperimentConfig base = default_config("stability");
    ExperimentConfig c = config_from_json_string("{\"version\": 1, \"grid\": {\"h\": 0.04}}", base);
    CHECK(c.grid.h == 0.04);
    CHECK(c.grid.half_width == base.grid.half_width);
    CHECK(c.solution == "manifold");
}

TEST_CASE("strict mode tightens upper bounds only") {
    ExperimentConfig c;
    const double period = c.tol("period"), order = c.tol("exact_order");
    c.tighten();
    CHECK(c.tol("period") == doctest::Approx(period / 10));
    CHECK(c.tol("exact_order") == order);
}

TEST_CASE("criterion rows") {
    CHECK(at_most("a", 1.0, 1.0, "DERIVED").pass());
    CHECK_FALSE(at_most("a", NAN, 1.0, "DERIVED").pass());
    CHECK(at_least("b", 2.0, 1.9, "DERIVED").pass());
    CHECK(within("c", 2.0, 1.7, 2.3, "PAPER").pass());
    CHECK_FALSE(within("c", 3.0, 1.7, 2.3, "PAPER").pass());
    ReportBundle b;
    b.add(at_most("a", 0.5, 1.0, "TRIVIAL"));
    CHECK(render_text(b) == "PASS a: 0.5 <= 1  [TRIVIAL]\n");
}

TEST_CASE("CSV bytes") {
    Table t{{"t", "rho"}};
    t.add({0.0, 1e-12});
    t.add({0.5, NAN});
    CHECK(to_csv(t) == "t,rho\n0,1e-12\n0.5,nan\n");
    Table l{{"family", "h"}};
    l.add("kink", {0.01});
    CHECK(to_csv(l) == "family,h\nkink,0.01\n");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333");
}

TEST_CASE("cells keep index order and capture failures") {
    auto out = run_cells<int>(9, 4, [](size_t i) {
        if (i == 4) throw std::runtime_error("boom");
        return int(i * i);
    });
    REQUIRE(out.size() == 9);
    for (size_t i = 0; i < 9; ++i) {
        if (i == 4) {
            CHECK_FALSE(out[i].ok());
            CHECK(out[i].error == "boom");
        } else {
            CHECK(*out[i].value == int(i * i));
        }
    }
}
