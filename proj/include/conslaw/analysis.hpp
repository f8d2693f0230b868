#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "conslaw/flux.hpp"
#include "conslaw/measure.hpp"
#include "conslaw/sampled.hpp"
#include "conslaw/solver.hpp"

namespace conslaw {

/// Kruzkov entropy pair at level k: E(u) = |u - k|,
/// F(u) = sgn(u - k)[phi(u) - phi(k)], with C_E = 1, C_F = C_phi.
struct KruzkovPair {
    double k;

    double entropy(double u) const { return std::abs(u - k); }
    double entropy_flux(const Flux& phi, double u) const {
        double s = u > k ? 1.0 : (u < k ? -1.0 : 0.0);
        return s * (phi.value(u) - phi.value(k));
    }
};

/// Window |x - (x_l + cphi t)| < radius around an atom trajectory, where the
/// singular part lives and pointwise checks on the regular part are void.
struct ExclusionWindow {
    double x0;
    double cphi;
    double radius;

    double center(double t) const { return x0 + cphi * t; }
    bool covers(double x, double t) const { return std::abs(x - center(t)) < radius; }
};

std::vector<ExclusionWindow> atom_exclusions(const std::vector<Atom>& atoms,
                                             const Flux& flux, double dx, int level);

// --- singular mass ---------------------------------------------------------

struct SingularMassOptions {
    std::array<int, 3> face_offsets{4, 8, 16};  // in cells, Richardson ladder
};

struct SingularMassEstimate {
    double value = 0.0;
    bool low_confidence = false;
    std::array<double, 3> raw{};  // estimates at the three offsets
};

/// Atom mass at time t recovered from the flux time integral side limits,
/// Richardson-extrapolated to offset zero and clamped to [0, initial mass].
SingularMassEstimate singular_mass(const SampledSolution& sol, double x0, double t,
                                   double initial_atom_mass,
                                   const SingularMassOptions& opt = {});

/// Phi(x-, t1, t2) and Phi(x+, t1, t2) by the same offset extrapolation.
std::pair<double, double> flux_time_side_limits(const SampledSolution& sol, double x,
                                                double t1, double t2,
                                                const SingularMassOptions& opt = {});

// --- waiting time ----------------------------------------------------------

struct WaitingTimeBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool upper_available = false;
    bool instant = false;  // unbounded sublinear part: waiting time is 0
    std::string note;
};

/// Closed-form bounds: lower = min(T, max_l c_l / gamma) per atom, upper =
/// min(T, (H+1) * total / (gamma - |K|)) when H > -1 and |K| < gamma. When the
/// catalog pair fails those constraints the shifted flux (k = 1) is tried; if
/// that fails too the upper bound is reported unavailable.
WaitingTimeBounds waiting_time_bounds(const Flux& flux, const std::vector<Atom>& atoms,
                                      double total_mass, double horizon);

struct WaitingTimeOptions {
    double mass_eps_frac = 0.02;    // clear when mass <= frac * initial mass
    double uniformity_tol = 0.25;   // top sup <= (1+tol) * previous-level sup ...
    double uniformity_floor = 1.0;  // ... plus this absolute slack
    double window_radius = 0.0;     // 0: auto from coarsest level
};

struct WaitingTimeReport {
    double t0_estimate = std::numeric_limits<double>::quiet_NaN();
    WaitingTimeBounds bounds;
    bool estimate_found = false;
    bool estimate_in_bounds = false;
    bool low_confidence = false;
    std::string note;
    std::vector<int> levels;
    std::vector<double> times;
    std::vector<std::vector<double>> atom_mass_series;   // [level][time], max over atoms
    std::vector<std::vector<double>> window_sup_series;  // [level][time]
};

/// Estimate the waiting time from runs at >= 3 regularization levels: first
/// snapshot after which every atom's tracked mass stays below its clearance
/// threshold and the near-atom sup norms agree across the top levels.
WaitingTimeReport estimate_waiting_time(const std::vector<const GridSolution*>& runs,
                                        const std::vector<Atom>& atoms, const Flux& flux,
                                        double horizon,
                                        const WaitingTimeOptions& opt = {});

// --- entropy residual ------------------------------------------------------

/// Discrete residual of the entropy inequality for one Kruzkov pair and one
/// space-time test function, on the absolutely continuous region. Uses
/// summation by parts, so constants cancel exactly. Entropy solutions give
/// residual >= -eps with eps the scheme truncation budget. Throws if the test
/// function support touches an exclusion window.
double kruzkov_residual(const SampledSolution& sol, const Flux& flux,
                        const KruzkovPair& pair, const SpaceTimeBump& zeta,
                        const std::vector<ExclusionWindow>& exclusions = {});

/// Truncation budget for the residual: 10 * dx * TV(u0) * T * |zeta|_C1.
double entropy_residual_budget(double dx, double tv_u0, double horizon,
                               const SpaceTimeBump& zeta);

// --- one-sided estimates ---------------------------------------------------

struct AronsonBenilanReport {
    double t1 = 0.0, t2 = 0.0;
    double worst_margin = 0.0;  // min over cells of (bound - value); >= -eps passes
    double worst_at = 0.0;
    double eps = 0.0;
    bool pass = false;
    bool u_form = false;  // margin measured on u (power catalog) or on phi(u)
};

/// Cellwise one-sided growth bound between two snapshots:
/// phi(u)(t2) + K/H <= (t2/t1)^H [phi(u)(t1) + K/H] (log form when H = 0),
/// stated on u itself for the power catalog. Cells inside exclusion windows
/// hold the singular part and are skipped.
AronsonBenilanReport aronson_benilan_check(const SampledSolution& sol, const Flux& flux,
                                           double t1, double t2,
                                           const std::vector<ExclusionWindow>& exclusions,
                                           double eps);

/// Allowance used by the checks: 5 * dx * |phi'| * (1 + (t2/t1)^H).
double aronson_benilan_allowance(const Flux& flux, double dx, double t1, double t2);

struct BlowupPoint {
    double x;
    double value;
    double bound;
    bool vacuous;
    bool ok;
};

struct BlowupReport {
    std::vector<BlowupPoint> points;
    bool pass = false;
    int side = +1;  // +1: approach from the right, -1: from the left
    double worst_deficit = 0.0;
};

/// Near-atom lower bound u_r(x0 +- w, t) >= Psi^{-1}(Psi_inf - w/t) on a
/// sequence of offsets. Constructed solutions satisfy it (with equality on
/// the self-similar fan); the frozen-atom witness fails it.
BlowupReport blowup_bound_check(const SampledSolution& sol, const Flux& flux, double x0,
                                double t, const std::vector<double>& offsets,
                                double eps_rel = 0.1);

// --- misc diagnostics ------------------------------------------------------

/// Lebesgue measure of {x : u(x, t) > threshold}.
double superlevel_measure(const SampledSolution& sol, double t, double threshold);

struct GalileanReport {
    std::vector<double> times;
    std::vector<double> l1_distance;
    double worst = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Shift the run of the full flux back by cphi*t per snapshot and compare with
/// the run of the reduced flux phi - cphi*u on the same datum.
GalileanReport galilean_shift_check(const GridSolution& full, const GridSolution& reduced,
                                    double cphi, double tolerance);

/// Phi(x-, t1, t2) <= Phi(x+, t1, t2) + eps at each probe point.
bool one_sided_flux_ordering(const SampledSolution& sol, const std::vector<double>& xs,
                             double t1, double t2, double eps);

}  // namespace conslaw
