#include <doctest.h>

#include <cmath>

#include "conslaw/exact.hpp"
#include "conslaw/numerics.hpp"
#include "conslaw/rk45.hpp"

using namespace conslaw;

TEST_CASE("rk45 integrator sanity: y' = -2ty") {
    auto table = integrate_rk45([](double t, double y) { return -2.0 * t * y; }, 0.0, 1.0,
                                2.0, 1e-10, 1e-14);
    REQUIRE(table.complete);
    for (double t : {0.3, 0.77, 1.5, 2.0})
        CHECK(table.value(t) == doctest::Approx(std::exp(-t * t)).epsilon(1e-8));
}

TEST_CASE("mass-conservation shock locator") {
    SUBCASE("no shock while the atom feeds the fan (p < 0, t <= 1)") {
        CHECK(DiracExactSolution::shock_from_mass(-1.0, 0.5) == 0.0);
        CHECK(DiracExactSolution::shock_from_mass(-1.0, 1.0) == 0.0);
    }

    SUBCASE("p = 0.5 locator matches the quadratic closed form") {
        // fan mass between xi and pt equals 1: xi^2 - (2pt+1) xi + (pt)^2 = 0
        for (double t : {0.01, 0.1, 0.5, 1.0}) {
            double pt = 0.5 * t;
            double expected = 0.5 * ((2 * pt + 1) - std::sqrt(4 * pt + 1));
            CHECK(DiracExactSolution::shock_from_mass(0.5, t) ==
                  doctest::Approx(expected).epsilon(1e-9));
        }
        // all mass starts at the origin
        CHECK(DiracExactSolution::shock_from_mass(0.5, 1e-6) ==
              doctest::Approx(2.5e-13).epsilon(1e-3));
    }

    SUBCASE("fan mass reproduces the linear-in-time filling for p < 0") {
        for (double t : {0.2, 0.6, 1.0})
            CHECK(fan_mass(-1.0, 0.0, 0.0, t, t) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("unit-atom solution, p = -1") {
    DiracExactSolution sol(-1.0, 2.0);

    SUBCASE("spot values from the region formula") {
        CHECK(sol.regular(0.25, 0.5) ==
              doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
        CHECK(sol.regular(0.75, 0.5) == 0.0);  // outside the fan
        CHECK(sol.atom_mass(0.5) == doctest::Approx(0.5));
        CHECK(sol.atom_mass(2.0) == 0.0);
        CHECK(sol.atom_mass(1.0) == 0.0);
        CHECK_THROWS_AS(sol.regular(0.1, -0.5), std::domain_error);
        CHECK_THROWS_AS(sol.regular(0.1, 2.5), std::domain_error);
    }

    SUBCASE("shock is born at t = 1 at the origin") {
        CHECK(sol.shock().t_birth == 1.0);
        CHECK(sol.shock().position(0.7) == 0.0);
        CHECK(sol.shock().position(1.0) == 0.0);
        CHECK(sol.shock().position(1.5) > 0.0);
    }

    SUBCASE("ODE shock agrees with the mass locator to 1e-4") {
        for (double t : {1.05, 1.2, 1.5, 1.8, 2.0})
            CHECK(std::abs(sol.shock().position(t) -
                           DiracExactSolution::shock_from_mass(-1.0, t)) <= 1e-4);
    }

    SUBCASE("Rankine-Hugoniot residual of the dense output") {
        CHECK(sol.shock().max_rh_residual <= 1e-6);
    }

    SUBCASE("mass conservation: regular + atom = 1") {
        for (double t : {0.25, 0.75, 1.0, 1.3, 1.9}) {
            double total = sol.regular_mass(t) + sol.atom_mass(t);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
            // independent quadrature of the density profile
            double lo = sol.shock().position(t);
            double quad = integrate([&](double x) { return sol.regular(x, t); },
                                    lo + 1e-13, 1.0 * t, 1e-12, 1e-10);
            CHECK(quad + sol.atom_mass(t) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    SUBCASE("singular mass law equals the one-sided flux balance") {
        // at the origin: mass(t) = 1 + Phi(0-) - Phi(0+) with Phi(0+) = t for t <= 1
        Flux f = Flux::power(-1.0);
        for (double t : {0.3, 0.8}) {
            double phi_right = integrate(
                [&](double s) { return f.value(sol.regular(1e-9, s)); }, 1e-12, t);
            CHECK(1.0 - phi_right == doctest::Approx(sol.atom_mass(t)).epsilon(1e-6));
        }
    }
}

TEST_CASE("unit-atom solution, 0 < p < 1 regularizes instantly") {
    DiracExactSolution sol(0.5, 1.0);
    CHECK(sol.atom_mass(0.1) == 0.0);
    CHECK(sol.shock().t_birth == 0.0);
    for (double t : {0.05, 0.3, 0.8}) {
        CHECK(sol.regular_mass(t) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(sol.shock().position(t) -
                       DiracExactSolution::shock_from_mass(0.5, t)) <= 1e-4);
        CHECK(std::isfinite(sol.sup_regular(t)));
    }
    // sup at the shock: (pt/xi)^2 - 1
    double t = 0.1;
    double xi = sol.shock().position(t);
    CHECK(sol.sup_regular(t) ==
          doctest::Approx(std::pow(0.05 / xi, 2.0) - 1.0).epsilon(1e-3));
}

TEST_CASE("pulse solution, n = 2, p = -1") {
    PulseExactSolution sol(2, -1.0, 6.5);

    SUBCASE("breakdown time and shock origin by hand arithmetic") {
        // phi(1) = 1/2, phi'(1) = 1/4: t_n = 1/(1/2 - 1/4) = 4, x_n = (1/2)(3/4)/(1/4) = 3/2
        CHECK(sol.breakdown_time() == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(sol.shock_origin() == doctest::Approx(1.5).epsilon(1e-14));
    }

    SUBCASE("piecewise branches before breakdown") {
        CHECK(sol.value(2.0, 1.0) == 0.0);            // ahead of the leading edge
        CHECK(sol.value(-0.2, 0.5) == doctest::Approx(1.0));  // plateau n/2
        CHECK(sol.value(-0.9, 0.5) == 0.0);           // behind the trailing shock
        // fan branch: u = (t/(x - 1/2))^{1/2} - 1
        double x = 1.0, t = 1.0;
        CHECK(sol.value(x, t) ==
              doctest::Approx(std::sqrt(t / (x - 0.5)) - 1.0).epsilon(1e-12));
        // datum recovered at t = 0
        CHECK(sol.value(0.0, 0.0) == doctest::Approx(1.0));
        CHECK(sol.value(0.6, 0.0) == 0.0);
    }

    SUBCASE("after breakdown the tracked shock carries the left edge") {
        for (double t : {4.5, 5.0, 6.0}) {
            double xi = sol.shock().position(t);
            CHECK(std::abs(xi - PulseExactSolution::shock_from_mass(2, -1.0, t)) <= 1e-4);
            CHECK(sol.value(xi - 0.01, t) == 0.0);
            CHECK(sol.value(xi + 0.01, t) > 0.0);
        }
        CHECK(sol.shock().max_rh_residual <= 1e-6);
        CHECK_THROWS_AS(sol.value(0.5, 40.0), std::domain_error);
    }

    SUBCASE("mass is conserved across the breakdown") {
        for (double t : {0.5, 2.0, 4.0, 5.5}) {
            double quad = integrate([&](double x) { return sol.value(x, t); }, -1.2,
                                    1.0 * t + 0.6, 1e-12, 1e-10);
            CHECK(quad == doctest::Approx(1.0).epsilon(1e-7));
        }
    }
}

TEST_CASE("pulse solutions converge to the unit-atom solution") {
    DiracExactSolution limit(-1.0, 2.0);
    PulseExactSolution fine(1 << 12, -1.0, 2.0);
    for (auto [x, t] : std::vector<std::pair<double, double>>{
             {0.25, 0.5}, {0.4, 0.75}, {0.3, 1.5}, {1.2, 1.5}})
        CHECK(std::abs(fine.value(x, t) - limit.regular(x, t)) <= 1e-2);
}

TEST_CASE("degenerate shock start uses the bootstrap") {
    DiracExactSolution sol(-1.0, 1.5);
    CHECK(sol.shock().startup == "mass-conservation bootstrap");
    PulseExactSolution pulse(2, -1.0, 6.0);
    CHECK(pulse.shock().startup == "direct");
}
