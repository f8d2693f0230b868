#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conslaw/flux.hpp"
#include "conslaw/grid.hpp"
#include "conslaw/measure.hpp"
#include "conslaw/solver.hpp"

namespace conslaw {

/// Invalid or missing configuration; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Flux flux_from_json(const nlohmann::json& j);
nlohmann::json flux_to_json(const Flux& f);

/// Parse "power:-1", "exponential:1.0", "logarithmic", "loglog", "linear:0.5".
Flux flux_from_spec(const std::string& spec);

Grid grid_from_json(const nlohmann::json& j);

/// {"atoms": [[x, c], ...], "density": {"kind": "zero" | "indicator" | "samples", ...}}
RadonMeasure measure_from_json(const nlohmann::json& j, const Grid& grid);

/// Parse "dirac:<x>:<mass>" or "indicator:<a>:<b>:<height>".
RadonMeasure measure_from_spec(const std::string& spec, const Grid& grid);

struct ExperimentConfig {
    nlohmann::json flux_json;
    nlohmann::json datum_json;
    Grid grid;
    std::vector<int> levels;
    double horizon = 1.0;
    double cfl = 0.45;
    double snapshot_dt = 0.0;             // used when snapshot_times is empty
    std::vector<double> snapshot_times;
    SchemeKind scheme = SchemeKind::godunov_upwind;
    std::vector<std::string> checks;
    std::string output_dir = "out";
    std::uint64_t seed = 12345;

    Flux flux() const { return flux_from_json(flux_json); }
    RadonMeasure datum() const { return measure_from_json(datum_json, grid); }
    std::vector<double> resolved_snapshots() const;
};

ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// Number of concurrent workers: CONSLAW_WORKERS or hardware concurrency.
int worker_count();

/// Run fn(i) for i in [0, n) on the worker pool; rethrows the first failure.
void parallel_for(int n, const std::function<void(int)>& fn);

void write_trajectory_csv(const std::string& path, const GridSolution& sol);
void write_diagnostics_csv(const std::string& path, const GridSolution& sol);

}  // namespace conslaw
