#include <doctest.h>

#include <cmath>
#include <memory>

#include "conslaw/analysis.hpp"
#include "conslaw/numerics.hpp"

using namespace conslaw;

namespace {

SolverConfig cfg_for(Grid g, double horizon, double snap_dt) {
    SolverConfig cfg;
    cfg.grid = g;
    cfg.horizon = horizon;
    for (double t = 0.0; t <= horizon + 1e-12; t += snap_dt)
        cfg.snapshot_times.push_back(std::min(t, horizon));
    return cfg;
}

std::shared_ptr<ExactDiracSampled> exact_sampled(double p, double horizon) {
    auto exact = std::make_shared<DiracExactSolution>(p, horizon);
    Grid g(-0.25, 2.25, 2560);  // dx = 2^-10
    std::vector<double> times;
    for (double t = 0.0; t <= horizon + 1e-12; t += 0.05)
        times.push_back(std::min(t, horizon));
    return std::make_shared<ExactDiracSampled>(exact, g, times);
}

// constant-in-space-and-time frames, for the exact cancellation check
class ConstSampled : public SampledSolution {
public:
    ConstSampled(Grid g, std::vector<double> times, double c)
        : grid_(g), times_(std::move(times)), frame_(g.n_cells, c) {}
    const Grid& grid() const override { return grid_; }
    const std::vector<double>& times() const override { return times_; }
    const std::vector<double>& frame(std::size_t) const override { return frame_; }
    double flux_time_integral(double, double) const override { return 0.0; }

private:
    Grid grid_;
    std::vector<double> times_;
    std::vector<double> frame_;
};

}  // namespace

TEST_CASE("singular mass tracking") {
    SUBCASE("closed-form solution: mass is max(1-t, 0)") {
        auto sol = exact_sampled(-1.0, 2.0);
        for (double t : {0.25, 0.5, 0.75}) {
            auto est = singular_mass(*sol, 0.0, t, 1.0);
            CHECK(std::abs(est.value - (1.0 - t)) <= 0.05);
        }
        for (double t : {1.25, 1.5}) CHECK(singular_mass(*sol, 0.0, t, 1.0).value <= 0.05);
    }

    SUBCASE("finite-volume trajectory reproduces the law") {
        Grid g(-0.25, 2.25, 2560);
        Flux f = Flux::power(-1.0);
        auto u0 = RadonMeasure::dirac(g, 0.0, 1.0).regularized_density(1024);
        auto sol = run(u0, f, cfg_for(g, 1.0, 0.05));
        auto est = singular_mass(sol, 0.0, 0.5, 1.0);
        CHECK(std::abs(est.value - 0.5) <= 0.05);
    }
}

TEST_CASE("waiting time bounds") {
    SUBCASE("bounded sublinear catalog: sharp for the unit atom") {
        auto b = waiting_time_bounds(Flux::power(-1.0), {{0.0, 1.0}}, 1.0, kInf);
        CHECK(b.lower == doctest::Approx(1.0));
        CHECK(b.upper == doctest::Approx(1.0));
        CHECK(b.upper_available);
    }
    SUBCASE("mass 2 atom doubles both bounds") {
        auto b = waiting_time_bounds(Flux::power(-1.0), {{0.0, 2.0}}, 2.0, kInf);
        CHECK(b.lower == doctest::Approx(2.0));
        CHECK(b.upper == doctest::Approx(2.0));
    }
    SUBCASE("unbounded flux regularizes instantly") {
        auto b = waiting_time_bounds(Flux::power(0.5), {{0.0, 1.0}}, 1.0, kInf);
        CHECK(b.instant);
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.0);
    }
    SUBCASE("exponential flux: H = -1 leaves only the lower bound") {
        auto b = waiting_time_bounds(Flux::exponential(1.0), {{0.0, 1.0}}, 1.0, kInf);
        CHECK(b.lower == doctest::Approx(1.0));
        CHECK(!b.upper_available);
    }
    SUBCASE("loglog flux recovers an upper bound through the k = 1 shift") {
        auto b = waiting_time_bounds(Flux::loglog(), {{0.0, 1.0}}, 1.0, kInf);
        CHECK(b.lower == doctest::Approx(1.0));  // gamma = 1
        REQUIRE(b.upper_available);
        double e = std::exp(1.0);
        double gamma1 = 1.0 / std::log(e + 1.0);
        double k1 = 1.0 / std::pow(std::log(e + 1.0), 2);
        CHECK(b.upper == doctest::Approx(1.0 / (gamma1 - k1)).epsilon(1e-12));
    }
    SUBCASE("linear flux never sheds its atom") {
        auto b = waiting_time_bounds(Flux::linear(1.0), {{0.0, 1.0}}, 1.0, 7.0);
        CHECK(b.lower == doctest::Approx(7.0));  // = horizon
    }
}

TEST_CASE("waiting time estimator needs three levels") {
    Grid g(-0.5, 1.5, 256);
    Flux f = Flux::power(-1.0);
    auto u0 = RadonMeasure::dirac(g, 0.0, 1.0).regularized_density(16);
    auto sol = run(u0, f, cfg_for(g, 0.25, 0.05));
    std::vector<const GridSolution*> two{&sol, &sol};
    CHECK_THROWS_AS(estimate_waiting_time(two, {{0.0, 1.0}}, f, 0.25, {}),
                    std::invalid_argument);
}

TEST_CASE("entropy residual") {
    Flux f = Flux::power(-1.0);

    SUBCASE("constant states cancel to rounding") {
        Grid g(-1.0, 1.0, 200);
        std::vector<double> times;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += 0.05) times.push_back(t);
        ConstSampled sol(g, times, 0.8);
        SpaceTimeBump zeta{TestFunction(-0.5, 0.5), TestFunction(0.2, 0.8)};
        for (double k : {0.0, 0.3, 1.2})
            CHECK(std::abs(kruzkov_residual(sol, f, {k}, zeta)) <= 1e-13);
    }

    SUBCASE("entropic shock produces the predicted positive residual") {
        // datum c on [-1, 0]: the up-jump at x = -1 travels as a shock with
        // speed phi(c)/c while the down-jump spreads as a fan moving right
        double c = 1.0;
        Grid g(-1.5, 1.5, 3072);
        auto u0 = RadonMeasure::indicator(g, -1.0, 0.0, c).density();
        auto sol = run(u0, f, cfg_for(g, 1.0, 0.01));
        double s = f.value(c) / c;  // 0.5
        SpaceTimeBump zeta{TestFunction(-1.1, -0.3), TestFunction(0.1, 0.9)};
        for (double k : {0.25, 0.5, 0.75}) {
            double production = 2.0 * (f.value(k) - k / c * f.value(c));
            double expected = production * integrate(
                                              [&](double t) {
                                                  return zeta.value(-1.0 + s * t, t);
                                              },
                                              0.1, 0.9);
            double r = kruzkov_residual(sol, f, {k}, zeta);
            CHECK(r > 0.0);
            CHECK(r == doctest::Approx(expected).epsilon(0.15));
        }
        // k outside the jump: weak-form residual only
        for (double k : {0.0, 1.0})
            CHECK(kruzkov_residual(sol, f, {k}, zeta) >= -1e-8);
    }

    SUBCASE("support touching an atom window is rejected") {
        auto sol = exact_sampled(-1.0, 1.0);
        std::vector<ExclusionWindow> excl{{0.0, 0.0, 0.05}};
        SpaceTimeBump bad{TestFunction(-0.02, 0.3), TestFunction(0.2, 0.8)};
        CHECK_THROWS_AS(kruzkov_residual(*sol, Flux::power(-1.0), {0.5}, bad, excl),
                        std::invalid_argument);
    }
}

TEST_CASE("one-sided growth estimate") {
    Flux f = Flux::power(-1.0);

    SUBCASE("equal times give zero margin") {
        auto sol = exact_sampled(-1.0, 1.0);
        auto rep = aronson_benilan_check(*sol, f, 0.5, 0.5, {}, 1e-12);
        CHECK(rep.worst_margin == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.pass);
    }

    SUBCASE("exact fan saturates, frames pass at the allowance") {
        auto sol = exact_sampled(-1.0, 1.0);
        double eps = aronson_benilan_allowance(f, sol->grid().dx(), 0.5, 1.0);
        auto rep = aronson_benilan_check(*sol, f, 0.5, 1.0, {}, eps);
        CHECK(rep.pass);
        CHECK(rep.u_form);
        CHECK(rep.worst_margin >= -1e-10);  // one-sided: never below the bound
    }

    SUBCASE("log-form branch (H = 0) runs") {
        Grid g(-1.0, 3.0, 1024);
        Flux lg = Flux::logarithmic();
        auto u0 = RadonMeasure::indicator(g, 0.0, 0.5, 1.0).density();
        auto sol = run(u0, lg, cfg_for(g, 1.0, 0.25));
        double eps = aronson_benilan_allowance(lg, g.dx(), 0.5, 1.0);
        auto rep = aronson_benilan_check(sol, lg, 0.5, 1.0, {}, eps);
        CHECK(!rep.u_form);
        CHECK(rep.pass);
    }

    CHECK_THROWS_AS(
        aronson_benilan_check(*exact_sampled(-1.0, 1.0), Flux::linear(1.0), 0.5, 1.0, {}, 1e-3),
        std::invalid_argument);
}

TEST_CASE("near-atom blow-up bound") {
    Flux f = Flux::power(-1.0);

    SUBCASE("vacuous beyond psi_inf * t") {
        auto sol = exact_sampled(-1.0, 1.0);
        auto rep = blowup_bound_check(*sol, f, 0.0, 0.5, {0.6, 0.9});
        CHECK(rep.pass);
        for (const auto& pt : rep.points) CHECK(pt.vacuous);
    }

    SUBCASE("constructed solution passes, frozen-atom witness fails") {
        auto sol = exact_sampled(-1.0, 1.0);
        auto rep = blowup_bound_check(*sol, f, 0.0, 0.5, {0.1, 0.2, 0.3, 0.4});
        CHECK(rep.pass);

        // witness: bounded density away from the atom, frozen unit atom at 0
        Grid g(-0.5, 4.0, 1152);
        auto u0 = RadonMeasure::indicator(g, 1.0, 2.0, 1.0).density();
        auto reg = std::make_shared<GridSolution>(run(u0, f, cfg_for(g, 0.5, 0.25)));
        FrozenDiracSolution witness(reg, {{0.0, 1.0}}, f.linear_rate());
        auto wrep = blowup_bound_check(witness, f, 0.0, 0.5, {0.1, 0.2, 0.3, 0.4});
        CHECK(!wrep.pass);
        CHECK(wrep.worst_deficit > 0.1);
        // the frozen atom keeps its mass: nothing flows through its sides
        CHECK(singular_mass(witness, 0.0, 0.5, 1.0).value == doctest::Approx(1.0));
        CHECK(witness.atoms_at(0.5).front().mass == 1.0);
    }
}

TEST_CASE("superlevel sets shrink with the regularization level") {
    Flux f = Flux::power(-1.0);
    Grid g(-0.25, 1.75, 2048);
    std::vector<double> measures;
    for (int n : {64, 256, 1024}) {
        auto sol = run(RadonMeasure::dirac(g, 0.0, 1.0).regularized_density(n), f,
                       cfg_for(g, 0.5, 0.25));
        measures.push_back(superlevel_measure(sol, 0.5, 0.5 * std::sqrt(double(n))));
    }
    CHECK(measures[1] <= measures[0]);
    CHECK(measures[2] <= measures[1]);
    CHECK(measures[2] <= 0.5 * measures[0]);

    auto sol = run(RadonMeasure::dirac(g, 0.0, 1.0).regularized_density(64), f,
                   cfg_for(g, 0.5, 0.25));
    CHECK(superlevel_measure(sol, 0.5, 1e9) == 0.0);
}

TEST_CASE("shift reduction to the sublinear flux") {
    Flux full = Flux::power(-1.0).with_linear_term(0.3);
    Flux reduced = full.sublinear_part();
    Grid g(-1.0, 3.5, 2304);  // dx = 2^-9
    auto u0 = RadonMeasure::indicator(g, 0.0, 1.0, 1.0).density();

    SUBCASE("zero rate: the two runs coincide") {
        auto a = run(u0, reduced, cfg_for(g, 1.0, 0.25));
        auto b = run(u0, reduced, cfg_for(g, 1.0, 0.25));
        auto rep = galilean_shift_check(a, b, 0.0, 1e-14);
        CHECK(rep.pass);
    }

    SUBCASE("shifting the full run back matches the reduced run") {
        auto cfg = cfg_for(g, 1.0, 0.25);
        auto a = run(u0, full, cfg);
        auto b = run(u0, reduced, cfg);
        double dx = g.dx();
        double dt = 0.45 * dx / full.lipschitz();
        double tol = 5.0 * (dx + dt) * 1.0 * 2.0;  // 5 (dx+dt) T TV(u0)
        auto rep = galilean_shift_check(a, b, full.linear_rate(), tol);
        CHECK(rep.pass);
        CHECK(rep.worst > 0.0);
    }
}

TEST_CASE("flux time integrals are ordered across each point") {
    auto sol = exact_sampled(-1.0, 1.0);
    CHECK(one_sided_flux_ordering(*sol, {-0.3, 0.0, 0.2, 0.5}, 0.2, 0.8, 1e-6));

    Grid g(-0.25, 2.25, 1280);
    Flux f = Flux::power(-1.0);
    auto fv = run(RadonMeasure::dirac(g, 0.0, 1.0).regularized_density(256), f,
                  cfg_for(g, 1.0, 0.1));
    CHECK(one_sided_flux_ordering(fv, {-0.1, 0.1, 0.4}, 0.2, 0.9, 1e-6));
}
