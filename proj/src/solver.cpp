#include "conslaw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

namespace {

enum class FaceMode { increasing, decreasing, unimodal };

struct Kernel {
    FaceMode mode;
    double u_star = 0.0;
    double phi_star = 0.0;
};

Kernel make_kernel(const Flux& flux, SchemeKind scheme) {
    auto crit = flux.critical_point();
    if (!crit) {
        if (flux.deriv(0.0) >= 0.0) return {FaceMode::increasing};
        return {FaceMode::decreasing};
    }
    if (scheme == SchemeKind::godunov_upwind && flux.deriv2(0.0) > 0.0)
        throw std::invalid_argument(
            "solver: non-monotone convex flux needs the engquist-osher scheme");
    return {FaceMode::unimodal, *crit, flux.value(*crit)};
}

// F at the face between states (a, b); phi_a, phi_b are precomputed phi values.
inline double face_flux(const Kernel& k, double a, double b, double phi_a, double phi_b) {
    switch (k.mode) {
        case FaceMode::increasing:
            return phi_a;
        case FaceMode::decreasing:
            return phi_b;
        case FaceMode::unimodal:
            // concave unimodal: up-part from the left, down-part from the right
            return (a <= k.u_star ? phi_a : k.phi_star) +
                   (b <= k.u_star ? 0.0 : phi_b - k.phi_star);
    }
    return 0.0;
}

}  // namespace

double numerical_flux(const Flux& flux, SchemeKind scheme, double u_left, double u_right) {
    if (u_left < 0.0) u_left = 0.0;
    if (u_right < 0.0) u_right = 0.0;
    Kernel k = make_kernel(flux, scheme);
    return face_flux(k, u_left, u_right, flux.value(u_left), flux.value(u_right));
}

std::vector<double> step(std::span<const double> state, const Flux& flux, double dt,
                         double dx, SchemeKind scheme, double cfl) {
    double m = flux.lipschitz();
    double dt_max = cfl * dx / m;
    if (dt > dt_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step: dt=" << dt << " violates the CFL bound, need dt <= " << dt_max;
        throw std::invalid_argument(os.str());
    }
    Kernel k = make_kernel(flux, scheme);
    size_t n = state.size();
    std::vector<double> phi(n), out(n);
    for (size_t i = 0; i < n; ++i) phi[i] = flux.value(state[i]);
    double lambda = dt / dx;
    double f_left = face_flux(k, 0.0, state[0], 0.0, phi[0]);
    for (size_t i = 0; i < n; ++i) {
        double a = state[i];
        double b = i + 1 < n ? state[i + 1] : 0.0;
        double f_right = face_flux(k, a, b, phi[i], i + 1 < n ? phi[i + 1] : 0.0);
        out[i] = state[i] - lambda * (f_right - f_left);
        f_left = f_right;
    }
    return out;
}

GridSolution::GridSolution(Grid grid, int level, std::string datum_id)
    : grid_(grid), level_(level), datum_id_(std::move(datum_id)) {}

double GridSolution::mass_drift() const {
    if (diag_.mass.empty()) return 0.0;
    double m0 = diag_.mass.front();
    double scale = std::max(std::abs(m0), 1e-300);
    double worst = 0.0;
    for (double m : diag_.mass) worst = std::max(worst, std::abs(m - m0));
    return worst / scale;
}

double GridSolution::flux_time_integral(double x, double t) const {
    if (face_integrals_.empty())
        throw std::runtime_error("flux_time_integral: face integrals were not recorded");
    int j = grid_.face_of(x);
    if (t <= times_.front()) return face_integrals_.front()[j];
    if (t >= times_.back()) return face_integrals_.back()[j];
    size_t hi = std::lower_bound(times_.begin(), times_.end(), t) - times_.begin();
    size_t lo = hi - 1;
    double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return (1.0 - w) * face_integrals_[lo][j] + w * face_integrals_[hi][j];
}

GridSolution run(const std::vector<double>& u0, const Flux& flux, const SolverConfig& cfg) {
    const Grid& g = cfg.grid;
    if (static_cast<int>(u0.size()) != g.n_cells)
        throw std::invalid_argument("run: datum size != n_cells");
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
        throw std::invalid_argument("run: cfl must lie in (0, 1)");
    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    if (!snaps.empty() && (snaps.front() < 0.0 || snaps.back() > cfg.horizon + 1e-12))
        throw std::invalid_argument("run: snapshot times outside [0, horizon]");

    // padding: support plus wave travel must stay inside the open grid
    int first = -1, last = -1;
    for (int i = 0; i < g.n_cells; ++i)
        if (u0[i] != 0.0) {
            if (first < 0) first = i;
            last = i;
        }
    double speed_hi = std::max({flux.deriv(0.0), flux.deriv(flux.u_max()), 0.0});
    double speed_lo = std::min({flux.deriv(0.0), flux.deriv(flux.u_max()), 0.0});
    if (first >= 0) {
        if (g.face(last + 1) + speed_hi * cfg.horizon > g.x_max ||
            g.face(first) + speed_lo * cfg.horizon < g.x_min)
            throw std::domain_error(
                "run: support plus wave travel exceeds the grid, enlarge the padding");
    }

    Kernel kern = make_kernel(flux, cfg.scheme);
    const double dx = g.dx();
    const double m = flux.lipschitz();
    const double dt_cfl = cfg.cfl * dx / m;
    const size_t n = u0.size();

    GridSolution sol(g, cfg.level, cfg.datum_id);
    std::vector<double> u = u0;
    std::vector<double> phi(n);
    std::vector<double> face_accum(n + 1, 0.0);

    auto record_diag = [&](double t) {
        sol.diag_.t.push_back(t);
        sol.diag_.mass.push_back(compensated_sum(u) * dx);
        double lo = kInf, hi = -kInf, tv = 0.0, prev = 0.0;
        for (double v : u) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            tv += std::abs(v - prev);
            prev = v;
        }
        tv += std::abs(prev);
        sol.diag_.umin.push_back(lo);
        sol.diag_.umax.push_back(hi);
        sol.diag_.tv.push_back(tv);
    };
    auto record_frame = [&](double t) {
        sol.times_.push_back(t);
        sol.frames_.push_back(u);
        if (cfg.record_face_integrals) sol.face_integrals_.push_back(face_accum);
    };

    record_diag(0.0);
    size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
        record_frame(0.0);
        ++next_snap;
    }

    double t = 0.0;
    const double t_eps = 1e-12 * std::max(1.0, cfg.horizon);
    while (t < cfg.horizon - t_eps) {
        double t_target =
            next_snap < snaps.size() ? snaps[next_snap] : cfg.horizon;
        double dt = std::min(dt_cfl, t_target - t);
        bool landing = t + dt >= t_target - t_eps;
        if (landing) dt = t_target - t;
        double lambda = dt / dx;

        for (size_t i = 0; i < n; ++i) phi[i] = flux.value(u[i]);
        double f_left = face_flux(kern, 0.0, u[0], 0.0, phi[0]);
        face_accum[0] += dt * f_left;
        for (size_t i = 0; i < n; ++i) {
            double b = i + 1 < n ? u[i + 1] : 0.0;
            double f_right =
                face_flux(kern, u[i], b, phi[i], i + 1 < n ? phi[i + 1] : 0.0);
            face_accum[i + 1] += dt * f_right;
            u[i] -= lambda * (f_right - f_left);
            f_left = f_right;
        }

        t = landing ? t_target : t + dt;
        record_diag(t);
        if (landing && next_snap < snaps.size()) {
            record_frame(t);
            ++next_snap;
        }
    }
    // trailing snapshots exactly at the horizon
    while (next_snap < snaps.size()) {
        record_frame(cfg.horizon);
        ++next_snap;
    }
    return sol;
}

ContractionReport l1_contraction_check(const std::vector<double>& u0a,
                                       const std::vector<double>& u0b,
                                       const Flux& flux, const SolverConfig& cfg) {
    if (u0a.size() != u0b.size())
        throw std::invalid_argument("l1_contraction_check: data sizes differ");
    GridSolution a = run(u0a, flux, cfg);
    GridSolution b = run(u0b, flux, cfg);
    ContractionReport rep;
    rep.times = a.times();
    double dx = cfg.grid.dx();
    for (size_t j = 0; j < a.times().size(); ++j) {
        std::vector<double> diff(u0a.size());
        const auto& fa = a.frame(j);
        const auto& fb = b.frame(j);
        for (size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(fa[i] - fb[i]);
        rep.l1_distance.push_back(compensated_sum(diff) * dx);
    }
    rep.nonincreasing = true;
    for (size_t j = 1; j < rep.l1_distance.size(); ++j) {
        double rise = rep.l1_distance[j] - rep.l1_distance[j - 1];
        rep.worst_increase = std::max(rep.worst_increase, rise);
        if (rise > 1e-10) rep.nonincreasing = false;
    }
    double max_u0a = *std::max_element(u0a.begin(), u0a.end());
    double max_u0b = *std::max_element(u0b.begin(), u0b.end());
    rep.max_a = 0.0;
    rep.max_b = 0.0;
    for (double v : a.diagnostics().umax) rep.max_a = std::max(rep.max_a, v);
    for (double v : b.diagnostics().umax) rep.max_b = std::max(rep.max_b, v);
    rep.max_principle_ok = rep.max_a <= max_u0a * (1.0 + 1e-12) + 1e-300 &&
                           rep.max_b <= max_u0b * (1.0 + 1e-12) + 1e-300;
    return rep;
}

double l1_distance_to(const GridSolution& sol, double t,
                      const std::function<double(double)>& reference) {
    size_t j = sol.time_index(t);
    const auto& f = sol.frame(j);
    const Grid& g = sol.grid();
    std::vector<double> diff(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        diff[i] = std::abs(f[i] - reference(g.center(static_cast<int>(i))));
    return compensated_sum(diff) * g.dx();
}

}  // namespace conslaw
