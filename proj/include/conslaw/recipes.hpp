#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "conslaw/analysis.hpp"
#include "conslaw/config.hpp"

namespace conslaw {

struct CheckResult {
    std::string name;
    std::string claim;  // the property the recipe reproduces
    bool pass = false;
    double margin = 0.0;  // signed distance to the threshold; >= 0 passes
    double tolerance = 0.0;
    std::string note;
    nlohmann::json evidence;
};

/// Shared runs behind the verification recipes. Suites are built lazily and
/// cached, so criteria that reuse the same trajectories (waiting time,
/// singular mass, conservation, entropy residuals) pay for them once.
class RecipeContext {
public:
    struct Suite {
        Flux flux = Flux::linear(0.0);
        std::vector<Atom> atoms;
        double horizon = 0.0;
        std::vector<std::shared_ptr<GridSolution>> runs;
    };

    explicit RecipeContext(std::uint64_t seed = 12345) : seed_(seed) {}
    std::uint64_t seed() const { return seed_; }

    const Suite& dirac_suite();    // p = -1 unit atom, levels {2^8, 2^10, 2^12}
    const Suite& rn_suite();       // p = -1 pulse level 2, four grids
    const Suite& instant_suite();  // p = 0.5 unit atom, levels {2^8, 2^10, 2^12}
    const Suite& ab_suite(double p);  // one-sided estimate runs, p in {-0.5, -1}

private:
    std::uint64_t seed_;
    Suite dirac_suite_;
    Suite rn_suite_;
    Suite instant_suite_;
    Suite ab_half_;
    Suite ab_one_;
};

std::vector<CheckResult> recipe_waiting_time(RecipeContext& ctx);      // 1
std::vector<CheckResult> recipe_rn_oracle(RecipeContext& ctx);         // 2
std::vector<CheckResult> recipe_singular_mass(RecipeContext& ctx);     // 3
std::vector<CheckResult> recipe_instant_regularization(RecipeContext& ctx);  // 4
std::vector<CheckResult> recipe_aronson_benilan(RecipeContext& ctx);   // 5
std::vector<CheckResult> recipe_nonuniqueness(RecipeContext& ctx);     // 6
std::vector<CheckResult> recipe_conservation(RecipeContext& ctx);      // 7
std::vector<CheckResult> recipe_entropy_residuals(RecipeContext& ctx); // 8
std::vector<CheckResult> recipe_hypothesis_saturation(RecipeContext& ctx);  // 9

std::vector<std::string> recipe_names();
std::vector<CheckResult> run_recipe(const std::string& name, RecipeContext& ctx);

nlohmann::json results_to_json(const std::string& recipe,
                               const std::vector<CheckResult>& results,
                               std::uint64_t seed);

}  // namespace conslaw
