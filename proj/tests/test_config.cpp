#include <doctest.h>

#include <cstdlib>

#include "conslaw/config.hpp"
#include "conslaw/recipes.hpp"

using namespace conslaw;
using nlohmann::json;

TEST_CASE("flux json round trip and spec strings") {
    Flux f = flux_from_json(json{{"kind", "power"}, {"p", -1.0}});
    CHECK(f.kind() == FluxKind::power);
    CHECK(f.value(1.0) == doctest::Approx(0.5));
    CHECK(flux_to_json(f)["p"] == -1.0);

    Flux g = flux_from_spec("power:-1:0.3");
    CHECK(g.linear_rate() == doctest::Approx(0.3));
    CHECK(flux_from_spec("loglog").kind() == FluxKind::loglog);

    CHECK_THROWS_AS(flux_from_json(json{{"kind", "power"}}), ConfigError);
    CHECK_THROWS_AS(flux_from_json(json{{"kind", "sinusoidal"}}), ConfigError);
    CHECK_THROWS_AS(flux_from_spec("power:abc"), ConfigError);
}

TEST_CASE("measure descriptors") {
    Grid g(-2.0, 2.0, 160);
    json j = {{"atoms", {{0.0, 1.0}, {0.5, 0.25}}},
              {"density", {{"kind", "indicator"}, {"a", -1.0}, {"b", 0.0}, {"height", 2.0}}}};
    RadonMeasure m = measure_from_json(j, g);
    CHECK(m.atoms().size() == 2);
    CHECK(m.total_mass() == doctest::Approx(3.25));

    CHECK_THROWS_AS(
        measure_from_json(json{{"density", {{"kind", "samples"}, {"values", {1.0, 2.0}}}}}, g),
        ConfigError);
    CHECK_THROWS_AS(measure_from_json(json{{"atoms", {{0.0}}}}, g), ConfigError);

    RadonMeasure d = measure_from_spec("dirac:0.5:2", g);
    CHECK(d.atoms().front().mass == 2.0);
    CHECK_THROWS_AS(measure_from_spec("dirac:0.5", g), ConfigError);
}

TEST_CASE("experiment config validation") {
    json good = {{"flux", {{"kind", "power"}, {"p", -1.0}}},
                 {"datum", {{"atoms", {{0.0, 1.0}}}}},
                 {"grid", {{"x_min", -1.0}, {"x_max", 3.0}, {"n_cells", 512}}},
                 {"horizon", 2.0},
                 {"levels", {16, 64}},
                 {"snapshot_dt", 0.5}};
    ExperimentConfig cfg = experiment_from_json(good);
    CHECK(cfg.levels.size() == 2);
    CHECK(cfg.resolved_snapshots().size() == 5);
    CHECK(cfg.flux().value(1.0) == doctest::Approx(0.5));

    json missing = good;
    missing.erase("flux");
    CHECK_THROWS_AS(experiment_from_json(missing), ConfigError);

    json bad_scheme = good;
    bad_scheme["scheme"] = "spectral";
    CHECK_THROWS_AS(experiment_from_json(bad_scheme), ConfigError);

    json no_snaps = good;
    no_snaps.erase("snapshot_dt");
    CHECK_THROWS_AS(experiment_from_json(no_snaps), ConfigError);
}

TEST_CASE("recipe registry") {
    auto names = recipe_names();
    CHECK(names.size() == 9);
    RecipeContext ctx;
    CHECK_THROWS_AS(run_recipe("no-such-recipe", ctx), ConfigError);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    RecipeContext a(42), b(42);
    auto ra = results_to_json("hypothesis-saturation",
                              recipe_hypothesis_saturation(a), a.seed());
    auto rb = results_to_json("hypothesis-saturation",
                              recipe_hypothesis_saturation(b), b.seed());
    CHECK(ra.dump() == rb.dump());
}

#ifdef CLI_PATH
TEST_CASE("cli exit codes") {
    std::string cli = CLI_PATH;
    CHECK(std::system((cli + " sweep --p -0.5,-1 --quantity t0 > /dev/null").c_str()) == 0);
    int bad = std::system((cli + " sweep --p -0.5 --quantity bogus 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 2);
    int usage = std::system((cli + " sweep 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(usage) == 2);
    int exact = std::system(
        (cli + " exact --p -1 --t 0.5:0.5:1 --xs 0.25:0.25:1 > /dev/null").c_str());
    CHECK(exact == 0);
}
#endif
