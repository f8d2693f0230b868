#include "conslaw/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conslaw/numerics.hpp"

namespace conslaw {

using nlohmann::json;

namespace {

std::vector<double> time_grid(double horizon, double dt) {
    std::vector<double> out;
    int n = static_cast<int>(std::lround(horizon / dt));
    for (int i = 0; i <= n; ++i) out.push_back(std::min(i * dt, horizon));
    return out;
}

std::string level_tag(int level) {
    std::ostringstream os;
    os << "n=" << level;
    return os.str();
}

CheckResult make_result(std::string name, std::string claim, double margin,
                        double tolerance, std::string note = "") {
    CheckResult r;
    r.name = std::move(name);
    r.claim = std::move(claim);
    r.margin = margin;
    r.tolerance = tolerance;
    r.pass = margin >= 0.0;
    r.note = std::move(note);
    return r;
}

}  // namespace

const RecipeContext::Suite& RecipeContext::dirac_suite() {
    if (!dirac_suite_.runs.empty()) return dirac_suite_;
    Suite s;
    s.flux = Flux::power(-1.0);
    s.atoms = {{0.0, 1.0}};
    s.horizon = 2.0;
    Grid grid(-0.25, 2.25, 10240);  // dx = 2^-12
    RadonMeasure datum = RadonMeasure::dirac(grid, 0.0, 1.0);
    std::vector<int> levels{256, 1024, 4096};
    s.runs.resize(levels.size());
    parallel_for(static_cast<int>(levels.size()), [&](int i) {
        SolverConfig cfg;
        cfg.grid = grid;
        cfg.horizon = s.horizon;
        cfg.snapshot_times = time_grid(s.horizon, 0.025);
        cfg.level = levels[i];
        cfg.datum_id = "dirac:0:1";
        s.runs[i] = std::make_shared<GridSolution>(
            run(datum.regularized_density(levels[i]), s.flux, cfg));
    });
    dirac_suite_ = std::move(s);
    return dirac_suite_;
}

const RecipeContext::Suite& RecipeContext::rn_suite() {
    if (!rn_suite_.runs.empty()) return rn_suite_;
    Suite s;
    s.flux = Flux::power(-1.0);
    s.horizon = 6.0;
    std::vector<int> cells{2304, 4608, 9216, 18432};  // dx = 2^-8 .. 2^-11 on [-1.5, 7.5]
    s.runs.resize(cells.size());
    parallel_for(static_cast<int>(cells.size()), [&](int i) {
        Grid grid(-1.5, 7.5, cells[i]);
        RadonMeasure datum = RadonMeasure::dirac(grid, 0.0, 1.0);
        SolverConfig cfg;
        cfg.grid = grid;
        cfg.horizon = s.horizon;
        cfg.snapshot_times = time_grid(s.horizon, 0.025);
        cfg.level = 2;
        cfg.record_face_integrals = false;
        cfg.datum_id = "pulse:2";
        s.runs[i] = std::make_shared<GridSolution>(
            run(datum.regularized_density(2), s.flux, cfg));
    });
    rn_suite_ = std::move(s);
    return rn_suite_;
}

const RecipeContext::Suite& RecipeContext::instant_suite() {
    if (!instant_suite_.runs.empty()) return instant_suite_;
    Suite s;
    s.flux = Flux::power(0.5);
    s.atoms = {{0.0, 1.0}};
    s.horizon = 0.2;
    Grid grid(-0.25, 0.75, 4096);  // dx = 2^-12
    RadonMeasure datum = RadonMeasure::dirac(grid, 0.0, 1.0);
    // levels whose pulse breakdown time lies below the probe time t = 0.1,
    // so the near-atom profile has reached its limiting shape there
    std::vector<int> levels{1024, 2048, 4096};
    s.runs.resize(levels.size());
    parallel_for(static_cast<int>(levels.size()), [&](int i) {
        SolverConfig cfg;
        cfg.grid = grid;
        cfg.horizon = s.horizon;
        cfg.snapshot_times = time_grid(s.horizon, 0.005);
        cfg.level = levels[i];
        cfg.datum_id = "dirac:0:1";
        s.runs[i] = std::make_shared<GridSolution>(
            run(datum.regularized_density(levels[i]), s.flux, cfg));
    });
    instant_suite_ = std::move(s);
    return instant_suite_;
}

const RecipeContext::Suite& RecipeContext::ab_suite(double p) {
    Suite& slot = p == -0.5 ? ab_half_ : ab_one_;
    if (!slot.runs.empty()) return slot;
    Suite s;
    s.flux = Flux::power(p);
    s.atoms = {{0.0, 1.0}};
    s.horizon = 3.0;
    s.runs.resize(2);
    parallel_for(2, [&](int i) {
        if (i == 0) {
            // unit atom, level 2^10
            Grid grid(-0.25, 2.25, 2560);  // dx = 2^-10
            SolverConfig cfg;
            cfg.grid = grid;
            cfg.horizon = 1.5;
            cfg.snapshot_times = time_grid(1.5, 0.25);
            cfg.level = 1024;
            cfg.datum_id = "dirac:0:1";
            s.runs[0] = std::make_shared<GridSolution>(
                run(RadonMeasure::dirac(grid, 0.0, 1.0).regularized_density(1024), s.flux,
                    cfg));
        } else {
            // bounded pulse, level 2
            Grid grid(-1.5, 4.5, 3072);  // dx = 2^-9
            SolverConfig cfg;
            cfg.grid = grid;
            cfg.horizon = 3.0;
            cfg.snapshot_times = time_grid(3.0, 0.25);
            cfg.level = 2;
            cfg.datum_id = "pulse:2";
            s.runs[1] = std::make_shared<GridSolution>(
                run(RadonMeasure::dirac(grid, 0.0, 1.0).regularized_density(2), s.flux,
                    cfg));
        }
    });
    slot = std::move(s);
    return slot;
}

// --- criterion 1: sharp waiting time ---------------------------------------

std::vector<CheckResult> recipe_waiting_time(RecipeContext& ctx) {
    const auto& suite = ctx.dirac_suite();
    std::vector<const GridSolution*> runs;
    for (const auto& r : suite.runs) runs.push_back(r.get());

    WaitingTimeReport rep =
        estimate_waiting_time(runs, suite.atoms, suite.flux, suite.horizon);

    std::vector<CheckResult> out;
    double bound_err = std::max(std::abs(rep.bounds.lower - 1.0),
                                rep.bounds.upper_available
                                    ? std::abs(rep.bounds.upper - 1.0)
                                    : kInf);
    out.push_back(make_result(
        "waiting-time-bounds-sharp",
        "unit atom with flux 1-(1+u)^-1: lower and upper waiting-time bounds both equal 1",
        1e-12 - bound_err, 1e-12));
    out.back().evidence = {{"lower", rep.bounds.lower}, {"upper", rep.bounds.upper}};

    double est = rep.t0_estimate;
    double margin = rep.estimate_found ? std::min(est - 0.95, 1.05 - est) : -1.0;
    CheckResult r = make_result(
        "waiting-time-estimate",
        "estimated waiting time lies in [0.95, 1.05] across levels 2^8, 2^10, 2^12",
        margin, 0.05, rep.low_confidence ? "level agreement weak" : "");
    r.evidence = {{"t0_estimate", est},
                  {"levels", rep.levels},
                  {"times", rep.times},
                  {"atom_mass_fraction", rep.atom_mass_series},
                  {"window_sup", rep.window_sup_series}};
    if (rep.low_confidence) r.pass = false;
    out.push_back(std::move(r));
    return out;
}

// --- criterion 2: closed-form pulse oracle ----------------------------------

std::vector<CheckResult> recipe_rn_oracle(RecipeContext& ctx) {
    const auto& suite = ctx.rn_suite();
    PulseExactSolution exact(2, -1.0, suite.horizon + 0.25);

    std::vector<double> eval_times{0.5, 2.0, 4.0, 6.0};
    std::vector<CheckResult> out;
    json evidence;
    double worst_margin = kInf;
    for (double t : eval_times) {
        std::vector<double> errs;
        for (const auto& r : suite.runs)
            errs.push_back(
                l1_distance_to(*r, t, [&](double x) { return exact.value(x, t); }));
        double mean_ratio = std::pow(errs.front() / errs.back(), 1.0 / 3.0);
        std::vector<double> ratios;
        for (size_t i = 0; i + 1 < errs.size(); ++i) ratios.push_back(errs[i] / errs[i + 1]);
        std::ostringstream key;
        key << "t=" << t;
        evidence[key.str()] = {{"l1_errors", errs},
                               {"ratios", ratios},
                               {"mean_ratio_per_halving", mean_ratio}};
        worst_margin = std::min(worst_margin,
                                std::min(mean_ratio - 1.6, 2.4 - mean_ratio));
    }
    CheckResult r = make_result(
        "rn-oracle-convergence",
        "pulse-datum runs converge to the closed-form solution with first-order "
        "L1 ratios in [1.6, 2.4] per grid halving at t in {0.5, 2, 4, 6}",
        worst_margin, 0.4);
    r.evidence = std::move(evidence);
    out.push_back(std::move(r));

    // breakdown geometry of the closed form, pinned by hand arithmetic
    double t_err = std::abs(exact.breakdown_time() - 4.0);
    double x_err = std::abs(exact.shock_origin() - 1.5);
    out.push_back(make_result("rn-breakdown-constants",
                              "level-2 pulse: shock forms at t=4 from x=1.5",
                              1e-12 - std::max(t_err, x_err), 1e-12));
    return out;
}

// --- criterion 3: singular mass law -----------------------------------------

std::vector<CheckResult> recipe_singular_mass(RecipeContext& ctx) {
    const auto& suite = ctx.dirac_suite();
    const GridSolution& top = *suite.runs.back();
    json evidence;
    double worst = 0.0;
    for (double t : {0.25, 0.5, 0.75}) {
        auto est = singular_mass(top, 0.0, t, 1.0);
        double dev = std::abs(est.value - (1.0 - t));
        worst = std::max(worst, dev);
        evidence["decay"].push_back({{"t", t},
                                     {"mass", est.value},
                                     {"expected", 1.0 - t},
                                     {"raw", est.raw},
                                     {"low_confidence", est.low_confidence}});
    }
    for (double t : {1.25, 1.5}) {
        auto est = singular_mass(top, 0.0, t, 1.0);
        worst = std::max(worst, est.value);
        evidence["cleared"].push_back({{"t", t}, {"mass", est.value}});
    }
    CheckResult r = make_result(
        "singular-mass-law",
        "tracked atom mass follows max(1-t, 0) within 0.05 at the top level",
        0.05 - worst, 0.05);
    r.evidence = std::move(evidence);
    return {std::move(r)};
}

// --- criterion 4: instantaneous regularization -------------------------------

std::vector<CheckResult> recipe_instant_regularization(RecipeContext& ctx) {
    const auto& suite = ctx.instant_suite();
    double t = 0.1;
    double radius = 2.0 / suite.runs.front()->level() +
                    16.0 * suite.runs.back()->grid().dx();
    std::vector<double> sups;
    for (const auto& r : suite.runs) sups.push_back(r->window_sup(0.0, radius, t));
    double lo = *std::min_element(sups.begin(), sups.end());
    double hi = *std::max_element(sups.begin(), sups.end());
    double variation = lo > 0.0 ? (hi - lo) / lo : kInf;

    DiracExactSolution exact(0.5, suite.horizon);
    double sup_ref = exact.sup_regular(t);

    std::vector<CheckResult> out;
    CheckResult r1 = make_result(
        "instant-regularization-sup",
        "unbounded flux (p=0.5): near-origin sup norms at t=0.1 agree across "
        "levels within 10%",
        0.10 - variation, 0.10);
    r1.evidence = {{"window_sup", sups}, {"variation", variation},
                   {"closed_form_sup", sup_ref}, {"window_radius", radius}};
    out.push_back(std::move(r1));

    auto est = singular_mass(*suite.runs.back(), 0.0, t, 1.0);
    CheckResult r2 = make_result(
        "instant-regularization-mass",
        "unbounded flux (p=0.5): no singular mass remains at t=0.1",
        0.05 - est.value, 0.05);
    r2.evidence = {{"mass", est.value}, {"raw", est.raw}};
    out.push_back(std::move(r2));
    return out;
}

// --- criterion 5: one-sided growth estimate ----------------------------------

std::vector<CheckResult> recipe_aronson_benilan(RecipeContext& ctx) {
    std::vector<CheckResult> out;
    json evidence;
    double worst_rel = kInf;  // margin / allowance, >= -1 passes
    for (double p : {-0.5, -1.0}) {
        const auto& suite = ctx.ab_suite(p);
        for (size_t k = 0; k < suite.runs.size(); ++k) {
            const GridSolution& sol = *suite.runs[k];
            std::vector<std::pair<double, double>> pairs =
                k == 0 ? std::vector<std::pair<double, double>>{{0.5, 1.0}, {0.75, 1.5}}
                       : std::vector<std::pair<double, double>>{{0.5, 2.0}, {1.0, 3.0}};
            auto exclusions = k == 0 ? atom_exclusions(suite.atoms, suite.flux,
                                                       sol.grid().dx(), sol.level())
                                     : std::vector<ExclusionWindow>{};
            for (auto [t1, t2] : pairs) {
                double eps = aronson_benilan_allowance(suite.flux, sol.grid().dx(), t1, t2);
                auto rep = aronson_benilan_check(sol, suite.flux, t1, t2, exclusions, eps);
                worst_rel = std::min(worst_rel, rep.worst_margin / eps);
                std::ostringstream key;
                key << "p=" << p << " " << sol.datum_id() << " (" << t1 << "," << t2 << ")";
                evidence[key.str()] = {{"worst_margin", rep.worst_margin},
                                       {"allowance", eps},
                                       {"worst_at", rep.worst_at},
                                       {"u_form", rep.u_form}};
            }
        }
    }
    CheckResult r = make_result(
        "one-sided-growth-fv",
        "cellwise one-sided growth bound holds on every run (p in {-0.5, -1}) "
        "within the scheme-diffusion allowance",
        1.0 + worst_rel, 1.0);
    r.evidence = std::move(evidence);
    out.push_back(std::move(r));

    // saturation on the exact self-similar fan, p = -1, (t1, t2) = (0.5, 1.0)
    double growth = std::sqrt(2.0);  // (t2/t1)^{1/(1-p)}
    double worst_sat = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        double x = 0.5 * i / 2000.0;
        double u1 = fan_value(-1.0, 0.0, x, 0.5);
        double u2 = fan_value(-1.0, 0.0, x, 1.0);
        double defect = std::abs(growth * (1.0 + u1) - 1.0 - u2);
        worst_sat = std::max(worst_sat, defect / std::max(1.0, u2));
    }
    CheckResult r2 = make_result(
        "one-sided-growth-saturation",
        "the self-similar fan saturates the one-sided bound to 1e-8",
        1e-8 - worst_sat, 1e-8);
    r2.evidence = {{"worst_defect", worst_sat}};
    out.push_back(std::move(r2));
    return out;
}

// --- criterion 6: near-atom blow-up and the frozen-atom witness --------------

std::vector<CheckResult> recipe_nonuniqueness(RecipeContext& ctx) {
    std::vector<CheckResult> out;
    Flux flux = Flux::power(-1.0);
    BlowupProfile prof(flux);
    DiracExactSolution exact(-1.0, 1.2);

    double t = 0.5;
    std::vector<double> offsets{0.1, 0.2, 0.3, 0.4};
    double worst_eq = 0.0;
    json eq_points;
    for (double w : offsets) {
        double bound = prof.psi_inverse(prof.psi_inf() - w / t);
        double u = exact.regular(w, t);
        worst_eq = std::max(worst_eq, std::abs(u - bound));
        eq_points.push_back({{"x", w}, {"u", u}, {"bound", bound}});
    }
    CheckResult r1 = make_result(
        "blowup-bound-equality",
        "closed-form solution meets the near-atom lower bound with equality at "
        "x in {0.1, 0.2, 0.3, 0.4}, t = 0.5",
        1e-8 - worst_eq, 1e-8);
    r1.evidence = std::move(eq_points);
    out.push_back(std::move(r1));

    // constructed FV solution satisfies the bound ...
    const auto& suite = ctx.dirac_suite();
    auto fv_rep = blowup_bound_check(*suite.runs.back(), flux, 0.0, t, offsets, 0.1);

    // ... while the frozen-atom witness (same datum, zero regular part) fails it
    Grid grid(-0.25, 2.25, 640);
    SolverConfig cfg;
    cfg.grid = grid;
    cfg.horizon = 0.6;
    cfg.snapshot_times = {0.0, 0.5};
    cfg.datum_id = "witness";
    auto zero_run = std::make_shared<GridSolution>(
        run(std::vector<double>(grid.n_cells, 0.0), flux, cfg));
    FrozenDiracSolution witness(zero_run, {{0.0, 1.0}}, flux.linear_rate());
    auto witness_rep = blowup_bound_check(witness, flux, 0.0, t, offsets, 0.1);

    bool discriminates = fv_rep.pass && !witness_rep.pass;
    CheckResult r2 = make_result(
        "nonuniqueness-discrimination",
        "near-atom blow-up check passes on the constructed solution and fails "
        "on the frozen-atom entropy solution with the same datum and flux",
        discriminates ? 1.0 : -1.0, 0.0);
    json pts_fv, pts_w;
    for (const auto& pt : fv_rep.points)
        pts_fv.push_back({{"x", pt.x}, {"u", pt.value}, {"bound", pt.bound}, {"ok", pt.ok}});
    for (const auto& pt : witness_rep.points)
        pts_w.push_back({{"x", pt.x}, {"u", pt.value}, {"bound", pt.bound}, {"ok", pt.ok}});
    r2.evidence = {{"constructed", pts_fv}, {"witness", pts_w}};
    out.push_back(std::move(r2));
    return out;
}

// --- criterion 7: conservation, contraction, maximum principle ---------------

std::vector<CheckResult> recipe_conservation(RecipeContext& ctx) {
    const auto& suite = ctx.dirac_suite();
    std::vector<CheckResult> out;

    double worst_drift = 0.0;
    json drifts;
    for (const auto& r : suite.runs) {
        worst_drift = std::max(worst_drift, r->mass_drift());
        drifts[level_tag(r->level())] = r->mass_drift();
    }
    CheckResult r1 = make_result("mass-conservation",
                                 "discrete mass drift stays below 1e-12 per run",
                                 1e-12 - worst_drift, 1e-12);
    r1.evidence = std::move(drifts);
    out.push_back(std::move(r1));

    double worst_max = 0.0, worst_min = 0.0;
    for (const auto& r : suite.runs) {
        double m0 = r->max_initial();
        for (double v : r->diagnostics().umax)
            worst_max = std::max(worst_max, (v - m0) / m0);
        for (double v : r->diagnostics().umin) worst_min = std::min(worst_min, v);
    }
    out.push_back(make_result(
        "maximum-principle",
        "cell averages stay within [0, max of the initial datum]",
        worst_min >= 0.0 ? 1e-12 - worst_max : -1.0, 1e-12));

    // contraction pair: level-2 pulse against its one-cell shift
    Grid grid(-1.5, 4.5, 3072);
    RadonMeasure datum = RadonMeasure::dirac(grid, 0.0, 1.0);
    std::vector<double> a = datum.regularized_density(2);
    std::vector<double> b(a.size(), 0.0);
    for (size_t i = 1; i < b.size(); ++i) b[i] = a[i - 1];
    SolverConfig cfg;
    cfg.grid = grid;
    cfg.horizon = 3.0;
    cfg.snapshot_times = time_grid(3.0, 0.05);
    cfg.record_face_integrals = false;
    cfg.datum_id = "pulse-pair";
    ContractionReport rep = l1_contraction_check(a, b, suite.flux, cfg);
    CheckResult r3 = make_result(
        "l1-contraction",
        "L1 distance between two runs is nonincreasing within 1e-10",
        1e-10 - rep.worst_increase, 1e-10,
        rep.max_principle_ok ? "" : "max principle violated in the pair");
    if (!rep.max_principle_ok) r3.pass = false;
    r3.evidence = {{"l1_distance", rep.l1_distance}};
    out.push_back(std::move(r3));
    return out;
}

// --- criterion 8: entropy residuals ------------------------------------------

namespace {

struct ResidualCase {
    const GridSolution* run;
    const RecipeContext::Suite* suite;
    std::string tag;
};

CheckResult residual_sweep(const std::vector<ResidualCase>& cases, std::uint64_t seed) {
    double worst_rel = kInf;  // (R + eps)/eps over all draws
    json evidence;
    for (const auto& rc : cases) {
        const GridSolution& sol = *rc.run;
        const Flux& flux = rc.suite->flux;
        const Grid& g = sol.grid();
        double dx = g.dx();
        double horizon = sol.times().back();
        double tv0 = sol.diagnostics().tv.front();
        auto exclusions = atom_exclusions(rc.suite->atoms, flux, dx, sol.level());

        // admissible space interval: clear of atom windows, inside the grid
        double x_lo = g.x_min + 0.05 * (g.x_max - g.x_min);
        for (const auto& w : exclusions)
            x_lo = std::max(x_lo, w.x0 + w.radius + 4.0 * dx);
        double x_hi = g.x_max - 0.05 * (g.x_max - g.x_min);

        UniformSampler rng(seed ^ std::hash<std::string>{}(rc.tag));
        double max_k = std::max(sol.max_initial(), 1e-6);
        double run_worst = kInf;
        for (int draw = 0; draw < 20; ++draw) {
            double span = x_hi - x_lo;
            double w = rng.uniform(0.15, 0.5) * span;
            double a = rng.uniform(x_lo, x_hi - w);
            double t1 = rng.uniform(0.05, 0.5) * horizon;
            double t2 = t1 + rng.uniform(0.2, 0.45) * horizon;
            t2 = std::min(t2, 0.95 * horizon);
            SpaceTimeBump zeta{TestFunction(a, a + w), TestFunction(t1, t2)};
            double eps = entropy_residual_budget(dx, tv0, horizon, zeta);
            for (int ik = 0; ik < 10; ++ik) {
                KruzkovPair pair{max_k * ik / 9.0};
                double r = kruzkov_residual(sol, flux, pair, zeta, exclusions);
                run_worst = std::min(run_worst, (r + eps) / eps);
            }
        }
        evidence[rc.tag] = {{"worst_scaled_margin", run_worst}};
        worst_rel = std::min(worst_rel, run_worst);
    }
    CheckResult r = make_result(
        "entropy-residuals",
        "entropy residual >= -budget for 10 levels x 20 random test functions "
        "on every run behind criteria 1-5",
        worst_rel, 0.0);
    r.evidence = std::move(evidence);
    return r;
}

}  // namespace

std::vector<CheckResult> recipe_entropy_residuals(RecipeContext& ctx) {
    std::vector<ResidualCase> cases;
    auto add_suite = [&cases](const RecipeContext::Suite& s, const std::string& prefix) {
        for (const auto& r : s.runs)
            cases.push_back({r.get(), &s, prefix + " " + level_tag(r->level()) + " dx=" +
                                              std::to_string(r->grid().dx())});
    };
    add_suite(ctx.dirac_suite(), "dirac");
    add_suite(ctx.rn_suite(), "pulse");
    add_suite(ctx.instant_suite(), "instant");
    add_suite(ctx.ab_suite(-0.5), "ab(p=-0.5)");
    add_suite(ctx.ab_suite(-1.0), "ab(p=-1)");
    return {residual_sweep(cases, ctx.seed())};
}

// --- criterion 9: structural hypothesis saturation ---------------------------

std::vector<CheckResult> recipe_hypothesis_saturation(RecipeContext&) {
    std::vector<CheckResult> out;
    auto grid = log_sample_grid(Flux::kDefaultUMax, 2048);

    double worst_sat = 0.0;
    json sat;
    std::vector<Flux> saturating{Flux::power(-1.0), Flux::power(-0.5), Flux::power(0.5),
                                 Flux::exponential(1.0), Flux::logarithmic()};
    for (const Flux& f : saturating) {
        auto rep = check_hypotheses(f, grid);
        worst_sat = std::max(worst_sat, rep.h2.worst_abs);
        sat[f.describe()] = {{"equality_margin", rep.h2.worst_abs},
                             {"holds", rep.h2.holds}};
        if (!rep.h2.holds) worst_sat = kInf;
    }
    CheckResult r1 = make_result(
        "structural-equality",
        "catalog (H, K) pairs saturate the curvature inequality to 1e-9 relative "
        "on a 2048-point log grid",
        1e-9 - worst_sat, 1e-9);
    r1.evidence = std::move(sat);
    out.push_back(std::move(r1));

    Flux ll = Flux::loglog();
    auto rep = check_hypotheses(ll, grid, 1.0);
    double e = std::exp(1.0);
    double k_expected = 1.0 / std::pow(std::log(e + 1.0), 2.0);
    auto shifted_pair = ll.shifted(1.0).h2_params();
    double pair_err = shifted_pair ? std::abs(shifted_pair->k - k_expected) : kInf;
    bool ok = rep.h2_shift && rep.h2_shift->holds && pair_err <= 1e-12;
    CheckResult r2 = make_result(
        "shifted-hypothesis-loglog",
        "shifted loglog flux (k=1) satisfies the curvature inequality with "
        "H = 0, K = log^-2(e+1)",
        ok ? 1.0 : -1.0, 0.0);
    r2.evidence = {{"k_catalog", shifted_pair ? shifted_pair->k : -1.0},
                   {"k_expected", k_expected},
                   {"worst_margin", rep.h2_shift ? rep.h2_shift->worst_margin : kInf}};
    out.push_back(std::move(r2));
    return out;
}

// --- registry ----------------------------------------------------------------

std::vector<std::string> recipe_names() {
    return {"prop11-waiting-time",     "rn-oracle",
            "singular-mass",           "instant-regularization",
            "aronson-benilan",         "nonuniqueness",
            "conservation-contraction", "entropy-residuals",
            "hypothesis-saturation"};
}

std::vector<CheckResult> run_recipe(const std::string& name, RecipeContext& ctx) {
    if (name == "prop11-waiting-time") return recipe_waiting_time(ctx);
    if (name == "rn-oracle") return recipe_rn_oracle(ctx);
    if (name == "singular-mass") return recipe_singular_mass(ctx);
    if (name == "instant-regularization") return recipe_instant_regularization(ctx);
    if (name == "aronson-benilan") return recipe_aronson_benilan(ctx);
    if (name == "nonuniqueness") return recipe_nonuniqueness(ctx);
    if (name == "conservation-contraction") return recipe_conservation(ctx);
    if (name == "entropy-residuals") return recipe_entropy_residuals(ctx);
    if (name == "hypothesis-saturation") return recipe_hypothesis_saturation(ctx);
    throw ConfigError("unknown recipe '" + name + "'");
}

json results_to_json(const std::string& recipe, const std::vector<CheckResult>& results,
                     std::uint64_t seed) {
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        checks.push_back({{"name", r.name},
                          {"claim", r.claim},
                          {"pass", r.pass},
                          {"margin", r.margin},
                          {"tolerance", r.tolerance},
                          {"note", r.note},
                          {"evidence", r.evidence}});
        all = all && r.pass;
    }
    return json{{"recipe", recipe}, {"seed", seed}, {"pass", all}, {"checks", checks}};
}

}  // namespace conslaw
