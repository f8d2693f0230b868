// Acceptance suite: one line per criterion, exit 0 iff everything passes.

#include <chrono>
#include <cstdio>
#include <exception>

#include "conslaw/recipes.hpp"

using namespace conslaw;

namespace {

struct Criterion {
    int number;
    const char* recipe;
    const char* title;
};

constexpr Criterion kCriteria[] = {
    {1, "prop11-waiting-time", "sharp waiting time for the unit atom"},
    {2, "rn-oracle", "closed-form pulse oracle equivalence"},
    {3, "singular-mass", "singular mass follows max(1-t, 0)"},
    {4, "instant-regularization", "unbounded flux regularizes instantly"},
    {5, "aronson-benilan", "one-sided growth estimate"},
    {6, "nonuniqueness", "blow-up lower bound and witness discrimination"},
    {7, "conservation-contraction", "conservation, contraction, maximum principle"},
    {8, "entropy-residuals", "entropy inequality residuals"},
    {9, "hypothesis-saturation", "structural hypothesis saturation"},
};

}  // namespace

int main() {
    RecipeContext ctx(12345);
    int failures = 0;
    auto start = std::chrono::steady_clock::now();
    for (const Criterion& c : kCriteria) {
        bool pass = true;
        double worst_margin = 1e300;
        std::string detail;
        try {
            auto results = run_recipe(c.recipe, ctx);
            for (const auto& r : results) {
                pass = pass && r.pass;
                if (r.margin < worst_margin) worst_margin = r.margin;
                if (!r.pass) detail += " !" + r.name;
            }
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string(" exception: ") + e.what();
            worst_margin = -1.0;
        }
        std::printf("[%s] criterion %d: %s (recipe %s, worst margin %.3g)%s\n",
                    pass ? "PASS" : "FAIL", c.number, c.title, c.recipe, worst_margin,
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - failures, elapsed);
    return failures == 0 ? 0 : 1;
}
