#include <doctest.h>

#include <cmath>

#include "conslaw/flux.hpp"
#include "conslaw/numerics.hpp"

using namespace conslaw;

TEST_CASE("flux evaluation matches closed forms") {
    Flux p1 = Flux::power(-1.0);
    CHECK(p1.value(1.0) == doctest::Approx(0.5).epsilon(1e-14));  // 1 - 1/2
    CHECK(p1.value(0.0) == 0.0);
    CHECK(p1.value(-0.3) == 0.0);  // negative arguments clamp

    Flux lg = Flux::logarithmic();
    CHECK(lg.value(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lg.value(0.0) == 0.0);

    CHECK(Flux::exponential(2.0).value(0.0) == 0.0);
    CHECK(Flux::loglog().value(0.0) == 0.0);
    CHECK(Flux::linear(0.7).value(2.0) == doctest::Approx(1.4));

    CHECK_THROWS_AS(p1.value(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(p1.deriv(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("flux derivatives") {
    CHECK(Flux::power(-1.0).deriv(1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(Flux::linear(0.3).deriv(17.0) == doctest::Approx(0.3));
    CHECK(Flux::exponential(1.0).deriv(0.0) == doctest::Approx(1.0));

    // centered finite differences, relative 1e-6 at step 1e-5 away from u = 0
    double h = 1e-5;
    for (const Flux& f : {Flux::power(-1.0), Flux::power(0.5), Flux::exponential(1.5),
                          Flux::logarithmic(), Flux::loglog()}) {
        for (double u : {0.1, 0.7, 3.0, 25.0}) {
            double fd = (f.value(u + h) - f.value(u - h)) / (2.0 * h);
            CHECK(f.deriv(u) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("structural constants from the catalog") {
    Flux p1 = Flux::power(-1.0);
    CHECK(p1.linear_rate() == 0.0);
    REQUIRE(p1.h2_params().has_value());
    CHECK(p1.h2_params()->h == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(p1.h2_params()->k == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p1.sublinear_gap() == doctest::Approx(1.0));
    CHECK(p1.monotone_sign() == +1);

    Flux ex = Flux::exponential(2.5);
    CHECK(ex.h2_params()->h == doctest::Approx(-1.0));
    CHECK(ex.h2_params()->k == doctest::Approx(1.0));
    CHECK(ex.sublinear_gap() == doctest::Approx(1.0));

    Flux lg = Flux::logarithmic();
    CHECK(lg.h2_params()->h == 0.0);
    CHECK(lg.h2_params()->k == doctest::Approx(1.0));
    CHECK(!lg.sublinear_part_bounded());

    CHECK(!Flux::linear(2.0).h2_params().has_value());
    CHECK(Flux::linear(2.0).sublinear_gap() == 0.0);

    // Lipschitz bound is the derivative at the origin for the concave catalog
    CHECK(Flux::power(-0.5).lipschitz() == doctest::Approx(0.5));
    CHECK(Flux::exponential(3.0).lipschitz() == doctest::Approx(3.0));
}

TEST_CASE("lipschitz property on random pairs") {
    UniformSampler rng(7);
    for (const Flux& f : {Flux::power(-1.0), Flux::power(0.5), Flux::exponential(1.0),
                          Flux::loglog()}) {
        double m = f.lipschitz();
        for (int i = 0; i < 10000; ++i) {
            double u = rng.uniform(0.0, 100.0), v = rng.uniform(0.0, 100.0);
            CHECK(std::abs(f.value(u) - f.value(v)) <=
                  m * std::abs(u - v) * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("hypothesis checks") {
    auto grid = log_sample_grid(1e6, 2048);

    SUBCASE("catalog pairs saturate the curvature inequality") {
        for (const Flux& f : {Flux::power(-1.0), Flux::power(0.5), Flux::exponential(1.0),
                              Flux::logarithmic()}) {
            auto rep = check_hypotheses(f, grid);
            CHECK(rep.h1.holds);
            CHECK(rep.h2.holds);
            CHECK(rep.h2.worst_abs <= 1e-9);  // equality within rounding
        }
    }

    SUBCASE("loglog holds strictly and its k-shift matches the known constants") {
        auto rep = check_hypotheses(Flux::loglog(), grid, 1.0);
        CHECK(rep.h2.holds);
        CHECK(rep.h2.worst_abs > 1e-6);  // strict inequality, no saturation
        REQUIRE(rep.h2_shift.has_value());
        CHECK(rep.h2_shift->holds);
        double e = std::exp(1.0);
        auto hk = Flux::loglog().shifted(1.0).h2_params();
        REQUIRE(hk.has_value());
        CHECK(hk->h == 0.0);
        CHECK(hk->k == doctest::Approx(1.0 / std::pow(std::log(e + 1.0), 2)).epsilon(1e-14));
    }

    SUBCASE("linear flux fails the strict inequality") {
        auto rep = check_hypotheses(Flux::linear(1.0), grid);
        CHECK(!rep.h2.holds);
    }

    SUBCASE("smallest feasible growth constant") {
        auto rep = check_hypotheses(Flux::power(-1.0), grid);
        CHECK(rep.h3_feasible);
        CHECK(rep.h3_smallest_l == doctest::Approx(0.5).epsilon(1e-9));
        auto rep_log = check_hypotheses(Flux::logarithmic(), grid);
        CHECK(rep_log.h3_smallest_l == doctest::Approx(1.0).epsilon(1e-9));
        auto rep_ll = check_hypotheses(Flux::loglog(), grid);
        CHECK(rep_ll.h3_tail_growing);  // required L keeps rising: no global L
    }

    CHECK_THROWS_AS(check_hypotheses(Flux::power(-1.0), std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("blow-up profile") {
    SUBCASE("closed form for the power catalog") {
        BlowupProfile prof(Flux::power(-1.0));
        CHECK(prof.psi(0.0) == 0.0);
        CHECK(prof.psi(1.0) == doctest::Approx(0.75).epsilon(1e-14));  // 1 - 2^-2
        CHECK(prof.psi_inf() == doctest::Approx(1.0));
        BlowupProfile half(Flux::power(-0.5));
        CHECK(half.psi_inf() == doctest::Approx(0.5));
        // psi(y) = |p| (1 - (1+y)^{p-1})
        CHECK(half.psi(3.0) == doctest::Approx(0.5 * (1.0 - std::pow(4.0, -1.5))));
    }

    SUBCASE("quadrature agrees with the closed form to 1e-10") {
        for (const Flux& f : {Flux::power(-1.0), Flux::power(-0.5), Flux::exponential(1.0),
                              Flux::logarithmic()}) {
            BlowupProfile prof(f);
            REQUIRE(prof.has_closed_form());
            for (double y : {0.1, 1.0, 10.0, 500.0})
                CHECK(prof.psi_by_quadrature(y) == doctest::Approx(prof.psi(y)).epsilon(1e-10));
        }
    }

    SUBCASE("monotone, bounded, invertible") {
        BlowupProfile prof(Flux::power(-1.0));
        double prev = -1.0;
        for (double y : {0.0, 0.5, 1.0, 4.0, 100.0, 1e5}) {
            double v = prof.psi(y);
            CHECK(v > prev);
            CHECK(v <= prof.psi_inf());
            prev = v;
        }
        for (double z : {0.1, 0.5, 0.9}) {
            double y = prof.psi_inverse(z);
            CHECK(prof.psi(y) == doctest::Approx(z).epsilon(1e-10));
        }
        CHECK(prof.psi_inverse(-0.2) == 0.0);
        CHECK(std::isinf(prof.psi_inverse(prof.psi_inf())));
    }

    SUBCASE("quadrature-only path for loglog") {
        BlowupProfile prof(Flux::loglog());
        CHECK(!prof.has_closed_form());
        CHECK(prof.psi_inf() > 0.0);
        CHECK(std::isfinite(prof.psi_inf()));
        CHECK(prof.psi(1.0) < prof.psi(2.0));
    }

    CHECK_THROWS_AS(BlowupProfile(Flux::linear(1.0)), std::invalid_argument);
}

TEST_CASE("tabulated flux interpolates monotonically, constants never guessed") {
    std::vector<double> u{0.0, 1.0, 2.0, 5.0, 10.0};
    std::vector<double> phi{0.0, 0.5, 0.8, 0.95, 1.0};
    Flux f = Flux::tabulated(u, phi);
    for (size_t i = 0; i < u.size(); ++i)
        CHECK(f.value(u[i]) == doctest::Approx(phi[i]).epsilon(1e-14));
    double prev = -1.0;
    for (double x = 0.0; x <= 10.0; x += 0.05) {
        double v = f.value(x);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    CHECK(!f.h2_params().has_value());
    Flux g = Flux::tabulated(u, phi, H2Pair{0.0, 1.0});
    CHECK(g.h2_params().has_value());
    CHECK_THROWS_AS(Flux::tabulated({0.0, 1.0}, {0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Flux::tabulated({0.0, 0.0}, {0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("linear term and shift decompositions") {
    Flux f = Flux::power(-1.0).with_linear_term(0.3);
    CHECK(f.linear_rate() == doctest::Approx(0.3));
    CHECK(f.value(2.0) == doctest::Approx((1.0 - 1.0 / 3.0) + 0.6).epsilon(1e-14));
    Flux sub = f.sublinear_part();
    CHECK(sub.linear_rate() == 0.0);
    CHECK(sub.value(2.0) == doctest::Approx(1.0 - 1.0 / 3.0));

    Flux sh = Flux::power(-1.0).shifted(1.0);
    CHECK(sh.value(0.0) == 0.0);
    CHECK(sh.value(1.0) == doctest::Approx((1.0 - 1.0 / 3.0) - 0.5).epsilon(1e-14));
    CHECK(sh.sublinear_gap() == doctest::Approx(0.5));  // (1+k)^p at k=1, p=-1
}
