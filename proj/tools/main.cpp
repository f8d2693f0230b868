#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conslaw/analysis.hpp"
#include "conslaw/config.hpp"
#include "conslaw/exact.hpp"
#include "conslaw/numerics.hpp"
#include "conslaw/recipes.hpp"

using nlohmann::json;
using namespace conslaw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return j;
}

std::vector<double> parse_range(const std::string& spec) {
    // lo:hi:step
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
        throw ConfigError("range spec must be lo:hi:step, got '" + spec + "'");
    std::vector<double> out;
    for (double x = lo; x <= hi + 0.5 * step; x += step) out.push_back(x);
    return out;
}

int cmd_simulate(const std::string& config_path, const std::string& flux_spec,
                 const std::string& datum_spec, const std::string& levels_spec,
                 double horizon_flag, const std::string& out_flag) {
    json j = config_path.empty() ? json::object() : load_json(config_path);
    if (!flux_spec.empty()) j["flux"] = flux_to_json(flux_from_spec(flux_spec));
    if (horizon_flag > 0.0) j["horizon"] = horizon_flag;
    if (!out_flag.empty()) j["output_dir"] = out_flag;
    if (!j.contains("grid")) {
        double t = j.value("horizon", 1.0);
        // default grid: unit support padded by the maximal wave travel
        j["grid"] = {{"x_min", -0.5 - t}, {"x_max", 1.5 + t},
                     {"n_cells", static_cast<int>((2.0 + 2 * t) * 1024)}};
    }
    if (!datum_spec.empty()) {
        Grid g = grid_from_json(j["grid"]);
        RadonMeasure m = measure_from_spec(datum_spec, g);
        json atoms = json::array();
        for (const Atom& a : m.atoms()) atoms.push_back({a.x, a.mass});
        j["datum"] = {{"atoms", atoms},
                      {"density", {{"kind", "samples"}, {"values", m.density()}}}};
    }
    if (!levels_spec.empty()) {
        std::vector<int> levels;
        std::stringstream ss(levels_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) levels.push_back(std::stoi(tok));
        j["levels"] = levels;
    }
    if (!j.contains("snapshot_dt") && !j.contains("snapshot_times"))
        j["snapshot_dt"] = j.value("horizon", 1.0) / 40.0;

    ExperimentConfig cfg = experiment_from_json(j);
    if (cfg.levels.empty()) throw ConfigError("simulate: no levels given");
    std::filesystem::create_directories(cfg.output_dir);

    Flux flux = cfg.flux();
    RadonMeasure datum = cfg.datum();
    std::vector<std::shared_ptr<GridSolution>> runs(cfg.levels.size());
    parallel_for(static_cast<int>(cfg.levels.size()), [&](int i) {
        SolverConfig sc;
        sc.grid = cfg.grid;
        sc.cfl = cfg.cfl;
        sc.scheme = cfg.scheme;
        sc.horizon = cfg.horizon;
        sc.snapshot_times = cfg.resolved_snapshots();
        sc.level = cfg.levels[i];
        sc.datum_id = cfg.datum_json.dump();
        runs[i] = std::make_shared<GridSolution>(
            run(datum.regularized_density(cfg.levels[i]), flux, sc));
    });
    for (const auto& r : runs) {
        std::string base = cfg.output_dir + "/traj_n" + std::to_string(r->level());
        write_trajectory_csv(base + ".csv", *r);
        write_diagnostics_csv(cfg.output_dir + "/diag_n" + std::to_string(r->level()) + ".csv",
                              *r);
        std::cout << "level " << r->level() << ": " << r->times().size()
                  << " snapshots, mass drift " << r->mass_drift() << "\n";
    }
    return kExitOk;
}

int cmd_exact(double p, int pulse_level, const std::string& ts_spec,
              const std::string& xs_spec, const std::string& out_path) {
    std::vector<double> ts = parse_range(ts_spec);
    std::vector<double> xs = parse_range(xs_spec);
    double horizon = ts.back() + 1e-9;

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        os = &file;
    }
    os->precision(17);
    *os << "t,x,u_r,atom_mass,xi\n";
    if (pulse_level > 0) {
        PulseExactSolution sol(pulse_level, p, horizon + 1.0);
        for (double t : ts)
            for (double x : xs)
                *os << t << ',' << x << ',' << sol.value(x, t) << ',' << 0.0 << ','
                    << (t > sol.breakdown_time() ? sol.shock().position(t) : 0.0) << '\n';
    } else {
        DiracExactSolution sol(p, horizon);
        for (double t : ts)
            for (double x : xs)
                *os << t << ',' << x << ',' << sol.regular(x, t) << ','
                    << sol.atom_mass(t) << ',' << sol.shock().position(t) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& config_path, std::vector<std::string> recipes,
               std::uint64_t seed, const std::string& out_path) {
    if (!config_path.empty()) {
        json j = load_json(config_path);
        ExperimentConfig cfg = experiment_from_json(j);
        if (recipes.empty()) recipes = cfg.checks;
        seed = cfg.seed;
    }
    if (recipes.empty() || (recipes.size() == 1 && recipes[0] == "all"))
        recipes = recipe_names();
    for (const auto& name : recipes) {
        auto known = recipe_names();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError("unknown recipe '" + name + "'");
    }

    RecipeContext ctx(seed);
    json report = json::array();
    bool all_pass = true;
    for (const auto& name : recipes) {
        auto results = run_recipe(name, ctx);
        json r = results_to_json(name, results, seed);
        all_pass = all_pass && r["pass"].get<bool>();
        report.push_back(std::move(r));
        for (const auto& res : results)
            std::cerr << (res.pass ? "[pass] " : "[FAIL] ") << name << ": " << res.name
                      << " (margin=" << res.margin << ", tol=" << res.tolerance << ")\n";
    }
    std::string text = report.dump(2);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text << '\n';
    } else {
        std::cout << text << std::endl;
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const std::string& ps_spec, const std::string& quantity,
              const std::string& out_path) {
    if (ps_spec.empty()) throw ConfigError("sweep: empty parameter list");
    std::vector<double> ps;
    std::stringstream ss(ps_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) ps.push_back(std::stod(tok));
    if (ps.empty()) throw ConfigError("sweep: empty parameter list");

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
    }
    os->precision(17);
    if (quantity == "t0") {
        std::vector<WaitingTimeBounds> rows(ps.size());
        parallel_for(static_cast<int>(ps.size()), [&](int i) {
            rows[i] = waiting_time_bounds(Flux::power(ps[i]), {{0.0, 1.0}}, 1.0, kInf);
        });
        *os << "p,lower,upper,upper_available\n";
        for (size_t i = 0; i < ps.size(); ++i)
            *os << ps[i] << ',' << rows[i].lower << ',' << rows[i].upper << ','
                << (rows[i].upper_available ? 1 : 0) << '\n';
    } else if (quantity == "mass") {
        *os << "p,t,atom_mass\n";
        for (double p : ps) {
            DiracExactSolution sol(p, 2.0);
            for (int k = 1; k <= 40; ++k) {
                double t = 0.05 * k;
                *os << p << ',' << t << ',' << sol.atom_mass(t) << '\n';
            }
        }
    } else {
        throw ConfigError("sweep: unknown quantity '" + quantity + "' (t0 | mass)");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measure-valued scalar conservation law simulator and verifier"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run the finite-volume solver");
    std::string sim_config, sim_flux, sim_datum, sim_levels, sim_out;
    double sim_horizon = 0.0;
    sim->add_option("--config", sim_config, "JSON experiment config");
    sim->add_option("--flux", sim_flux, "flux spec, e.g. power:-1");
    sim->add_option("--datum", sim_datum, "datum spec, e.g. dirac:0:1");
    sim->add_option("--n", sim_levels, "comma-separated regularization levels");
    sim->add_option("--T", sim_horizon, "time horizon");
    sim->add_option("--out", sim_out, "output directory");

    auto* ex = app.add_subcommand("exact", "sample the closed-form solutions");
    double ex_p = -1.0;
    int ex_n = 0;
    std::string ex_ts = "0.5:0.5:1", ex_xs = "0.05:0.5:0.05", ex_out;
    ex->add_option("--p", ex_p, "flux exponent (p < 1, p != 0)")->required();
    ex->add_option("--n", ex_n, "pulse level (omit for the unit-atom solution)");
    ex->add_option("--t", ex_ts, "times lo:hi:step");
    ex->add_option("--xs", ex_xs, "positions lo:hi:step");
    ex->add_option("--out", ex_out, "output CSV (default stdout)");

    auto* ver = app.add_subcommand("verify", "run verification recipes");
    std::string ver_config, ver_out;
    std::vector<std::string> ver_recipes;
    std::uint64_t ver_seed = 12345;
    ver->add_option("--config", ver_config, "JSON config with a 'checks' list");
    ver->add_option("--recipe", ver_recipes, "recipe name (repeatable) or 'all'");
    ver->add_option("--seed", ver_seed, "seed for randomized test functions");
    ver->add_option("--out", ver_out, "report JSON path (default stdout)");

    auto* sw = app.add_subcommand("sweep", "parameter sweeps of closed-form quantities");
    std::string sw_ps, sw_quantity = "t0", sw_out;
    sw->add_option("--p", sw_ps, "comma-separated exponents")->required();
    sw->add_option("--quantity", sw_quantity, "t0 | mass");
    sw->add_option("--out", sw_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_flux, sim_datum, sim_levels, sim_horizon,
                                sim_out);
        if (ex->parsed()) return cmd_exact(ex_p, ex_n, ex_ts, ex_xs, ex_out);
        if (ver->parsed()) return cmd_verify(ver_config, ver_recipes, ver_seed, ver_out);
        if (sw->parsed()) return cmd_sweep(sw_ps, sw_quantity, sw_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
