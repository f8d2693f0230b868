#include "conslaw/config.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace conslaw {

using nlohmann::json;

namespace {

double need_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string("config: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: expected a number, got '" + s + "'");
    }
}

}  // namespace

Flux flux_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("config: flux needs a 'kind'");
    std::string kind = j["kind"].get<std::string>();
    double lin = j.value("linear_offset", 0.0);
    Flux f = [&]() {
        if (kind == "power") return Flux::power(need_number(j, "p"));
        if (kind == "exponential") return Flux::exponential(need_number(j, "alpha"));
        if (kind == "logarithmic") return Flux::logarithmic();
        if (kind == "loglog") return Flux::loglog();
        if (kind == "linear") return Flux::linear(need_number(j, "c"));
        if (kind == "tabulated") {
            if (!j.contains("u") || !j.contains("phi"))
                throw ConfigError("config: tabulated flux needs 'u' and 'phi' arrays");
            std::optional<H2Pair> hk;
            if (j.contains("h") && j.contains("k"))
                hk = H2Pair{j["h"].get<double>(), j["k"].get<double>()};
            return Flux::tabulated(j["u"].get<std::vector<double>>(),
                                   j["phi"].get<std::vector<double>>(), hk);
        }
        throw ConfigError("config: unknown flux kind '" + kind + "'");
    }();
    if (lin != 0.0) f = f.with_linear_term(lin);
    return f;
}

json flux_to_json(const Flux& f) {
    json j;
    switch (f.kind()) {
        case FluxKind::power: j = {{"kind", "power"}, {"p", f.param()}}; break;
        case FluxKind::exponential: j = {{"kind", "exponential"}, {"alpha", f.param()}}; break;
        case FluxKind::logarithmic: j = {{"kind", "logarithmic"}}; break;
        case FluxKind::loglog: j = {{"kind", "loglog"}}; break;
        case FluxKind::linear: j = {{"kind", "linear"}, {"c", f.param()}}; break;
        case FluxKind::tabulated: j = {{"kind", "tabulated"}}; break;
    }
    if (f.linear_term() != 0.0) j["linear_offset"] = f.linear_term();
    return j;
}

Flux flux_from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("empty flux spec");
    json j{{"kind", parts[0]}};
    if (parts[0] == "power" && parts.size() > 1) j["p"] = to_double(parts[1]);
    if (parts[0] == "exponential" && parts.size() > 1) j["alpha"] = to_double(parts[1]);
    if (parts[0] == "linear" && parts.size() > 1) j["c"] = to_double(parts[1]);
    if (parts.size() > 2) j["linear_offset"] = to_double(parts[2]);
    return flux_from_json(j);
}

Grid grid_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: grid must be an object");
    double lo = need_number(j, "x_min"), hi = need_number(j, "x_max");
    if (!j.contains("n_cells") || !j["n_cells"].is_number_integer())
        throw ConfigError("config: grid needs integer 'n_cells'");
    return Grid(lo, hi, j["n_cells"].get<int>());
}

RadonMeasure measure_from_json(const json& j, const Grid& grid) {
    if (!j.is_object()) throw ConfigError("config: datum must be an object");
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        for (const auto& a : j["atoms"]) {
            if (!a.is_array() || a.size() != 2)
                throw ConfigError("config: each atom is [x, mass]");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    }
    std::vector<double> density(grid.n_cells, 0.0);
    if (j.contains("density")) {
        const auto& d = j["density"];
        std::string kind = d.value("kind", "zero");
        if (kind == "zero") {
        } else if (kind == "indicator") {
            RadonMeasure ind = RadonMeasure::indicator(
                grid, need_number(d, "a"), need_number(d, "b"), d.value("height", 1.0));
            density = ind.density();
        } else if (kind == "samples") {
            density = d.at("values").get<std::vector<double>>();
            if (static_cast<int>(density.size()) != grid.n_cells)
                throw ConfigError("config: density samples must match n_cells");
        } else {
            throw ConfigError("config: unknown density kind '" + kind + "'");
        }
    }
    try {
        return RadonMeasure(grid, std::move(density), std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RadonMeasure measure_from_spec(const std::string& spec, const Grid& grid) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("empty datum spec");
    if (parts[0] == "dirac") {
        if (parts.size() != 3) throw ConfigError("datum spec: dirac:<x>:<mass>");
        return RadonMeasure::dirac(grid, to_double(parts[1]), to_double(parts[2]));
    }
    if (parts[0] == "indicator") {
        if (parts.size() != 4) throw ConfigError("datum spec: indicator:<a>:<b>:<height>");
        return RadonMeasure::indicator(grid, to_double(parts[1]), to_double(parts[2]),
                                       to_double(parts[3]));
    }
    throw ConfigError("unknown datum spec '" + spec + "'");
}

std::vector<double> ExperimentConfig::resolved_snapshots() const {
    if (!snapshot_times.empty()) return snapshot_times;
    if (!(snapshot_dt > 0.0))
        throw ConfigError("config: need snapshot_times or snapshot_dt > 0");
    std::vector<double> out;
    for (double t = 0.0; t < horizon + 0.5 * snapshot_dt; t += snapshot_dt)
        out.push_back(std::min(t, horizon));
    return out;
}

ExperimentConfig experiment_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    ExperimentConfig c;
    if (!j.contains("flux")) throw ConfigError("config: missing 'flux'");
    if (!j.contains("datum")) throw ConfigError("config: missing 'datum'");
    if (!j.contains("grid")) throw ConfigError("config: missing 'grid'");
    c.flux_json = j["flux"];
    c.datum_json = j["datum"];
    c.grid = grid_from_json(j["grid"]);
    c.horizon = need_number(j, "horizon");
    c.cfl = j.value("cfl", 0.45);
    c.levels = j.value("levels", std::vector<int>{});
    c.snapshot_dt = j.value("snapshot_dt", 0.0);
    c.snapshot_times = j.value("snapshot_times", std::vector<double>{});
    c.checks = j.value("checks", std::vector<std::string>{});
    c.output_dir = j.value("output_dir", std::string("out"));
    c.seed = j.value("seed", static_cast<std::uint64_t>(12345));
    std::string scheme = j.value("scheme", std::string("godunov-upwind"));
    if (scheme == "godunov-upwind")
        c.scheme = SchemeKind::godunov_upwind;
    else if (scheme == "engquist-osher")
        c.scheme = SchemeKind::engquist_osher;
    else
        throw ConfigError("config: unknown scheme '" + scheme + "'");
    // validate eagerly so schema errors surface before any run
    c.flux();
    c.datum();
    c.resolved_snapshots();
    return c;
}

int worker_count() {
    if (const char* env = std::getenv("CONSLAW_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 2;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&]() {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        }));
    for (auto& f : futs) f.get();  // propagates the first exception
}

void write_trajectory_csv(const std::string& path, const GridSolution& sol) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    const Grid& g = sol.grid();
    os.precision(17);
    os << "# level=" << sol.level() << " x_min=" << g.x_min << " dx=" << g.dx()
       << " n_cells=" << g.n_cells << "\n";
    os << "# columns: t,u_0..u_{n_cells-1}\n";
    for (size_t j = 0; j < sol.times().size(); ++j) {
        os << sol.times()[j];
        for (double v : sol.frame(j)) os << ',' << v;
        os << '\n';
    }
}

void write_diagnostics_csv(const std::string& path, const GridSolution& sol) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os.precision(17);
    os << "t,mass,min,max,tv\n";
    const StepSeries& d = sol.diagnostics();
    for (size_t i = 0; i < d.t.size(); ++i)
        os << d.t[i] << ',' << d.mass[i] << ',' << d.umin[i] << ',' << d.umax[i] << ','
           << d.tv[i] << '\n';
}

}  // namespace conslaw
