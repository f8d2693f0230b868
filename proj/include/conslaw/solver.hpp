#pragma once

#include <span>
#include <string>
#include <vector>

#include "conslaw/flux.hpp"
#include "conslaw/grid.hpp"
#include "conslaw/sampled.hpp"

namespace conslaw {

enum class SchemeKind { godunov_upwind, engquist_osher };

struct SolverConfig {
    Grid grid;
    double cfl = 0.45;
    SchemeKind scheme = SchemeKind::godunov_upwind;
    double horizon = 1.0;
    std::vector<double> snapshot_times;  // sorted, within [0, horizon]
    bool record_face_integrals = true;
    int level = 0;           // regularization level n, carried for reports
    std::string datum_id;
};

struct StepSeries {
    std::vector<double> t, mass, umin, umax, tv;
};

/// Finite-volume trajectory for one regularization level: snapshots of cell
/// averages, the cumulative numerical-flux time integral at every face, and
/// per-step conservation diagnostics.
class GridSolution : public SampledSolution {
public:
    GridSolution(Grid grid, int level, std::string datum_id);

    const Grid& grid() const override { return grid_; }
    const std::vector<double>& times() const override { return times_; }
    const std::vector<double>& frame(std::size_t j) const override { return frames_[j]; }
    double flux_time_integral(double x, double t) const override;

    int level() const { return level_; }
    const std::string& datum_id() const { return datum_id_; }
    const StepSeries& diagnostics() const { return diag_; }
    const std::vector<double>& face_integrals(std::size_t j) const {
        return face_integrals_[j];
    }

    double initial_mass() const { return diag_.mass.empty() ? 0.0 : diag_.mass.front(); }
    /// max_t |mass(t) - mass(0)| / mass(0).
    double mass_drift() const;
    double max_initial() const { return diag_.umax.empty() ? 0.0 : diag_.umax.front(); }

private:
    friend GridSolution run(const std::vector<double>&, const Flux&, const SolverConfig&);
    Grid grid_;
    int level_;
    std::string datum_id_;
    std::vector<double> times_;
    std::vector<std::vector<double>> frames_;
    std::vector<std::vector<double>> face_integrals_;
    StepSeries diag_;
};

/// Monotone two-point numerical flux. Godunov reduces to upwind for monotone
/// phi; Engquist-Osher splits through the critical point for unimodal phi.
double numerical_flux(const Flux& flux, SchemeKind scheme, double u_left, double u_right);

/// One explicit conservative update with zero ghost states. Throws if dt
/// violates dt <= cfl * dx / M (the message carries the admissible dt).
std::vector<double> step(std::span<const double> state, const Flux& flux, double dt,
                         double dx, SchemeKind scheme = SchemeKind::godunov_upwind,
                         double cfl = 1.0);

/// Evolve the sampled datum to the horizon, landing exactly on the snapshot
/// times. Throws before stepping if the support plus wave travel does not fit
/// inside the grid.
GridSolution run(const std::vector<double>& u0, const Flux& flux, const SolverConfig& cfg);

struct ContractionReport {
    std::vector<double> times;
    std::vector<double> l1_distance;
    bool nonincreasing = false;
    double worst_increase = 0.0;
    bool max_principle_ok = false;
    double max_a = 0.0, max_b = 0.0;
};

/// Evolve two data under the same configuration and track the L1 distance,
/// which a monotone scheme keeps nonincreasing.
ContractionReport l1_contraction_check(const std::vector<double>& u0a,
                                       const std::vector<double>& u0b,
                                       const Flux& flux, const SolverConfig& cfg);

/// L1 distance between a frame and a reference function sampled at centers.
double l1_distance_to(const GridSolution& sol, double t,
                      const std::function<double(double)>& reference);

}  // namespace conslaw
