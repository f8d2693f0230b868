#include "conslaw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

std::vector<ExclusionWindow> atom_exclusions(const std::vector<Atom>& atoms,
                                             const Flux& flux, double dx, int level) {
    std::vector<ExclusionWindow> out;
    double pulse = level > 0 ? 2.0 / level : 0.0;
    for (const Atom& a : atoms)
        out.push_back({a.x, flux.linear_rate(), 8.0 * dx + pulse});
    return out;
}

SingularMassEstimate singular_mass(const SampledSolution& sol, double x0, double t,
                                   double initial_atom_mass,
                                   const SingularMassOptions& opt) {
    double dx = sol.grid().dx();
    SingularMassEstimate est;
    for (size_t i = 0; i < opt.face_offsets.size(); ++i) {
        double d = opt.face_offsets[i] * dx;
        double left = sol.flux_time_integral(x0 - d, t);
        double right = sol.flux_time_integral(x0 + d, t);
        est.raw[i] = initial_atom_mass + left - right;
    }
    // first-order Richardson in the offset; the two extrapolants must agree
    double r1 = 2.0 * est.raw[0] - est.raw[1];
    double r2 = 2.0 * est.raw[1] - est.raw[2];
    double scale = std::max(initial_atom_mass, 1e-12);
    double d1 = est.raw[1] - est.raw[0];
    double d2 = est.raw[2] - est.raw[1];
    bool monotone = d1 * d2 >= 0.0 || std::min(std::abs(d1), std::abs(d2)) < 1e-6 * scale;
    est.low_confidence = !monotone || std::abs(r1 - r2) > 0.05 * scale;
    est.value = std::clamp(r1, 0.0, initial_atom_mass);
    return est;
}

std::pair<double, double> flux_time_side_limits(const SampledSolution& sol, double x,
                                                double t1, double t2,
                                                const SingularMassOptions& opt) {
    double dx = sol.grid().dx();
    auto window = [&](double probe) {
        return sol.flux_time_integral(probe, t2) - sol.flux_time_integral(probe, t1);
    };
    std::array<double, 3> left{}, right{};
    for (size_t i = 0; i < opt.face_offsets.size(); ++i) {
        double d = opt.face_offsets[i] * dx;
        left[i] = window(x - d);
        right[i] = window(x + d);
    }
    return {2.0 * left[0] - left[1], 2.0 * right[0] - right[1]};
}

WaitingTimeBounds waiting_time_bounds(const Flux& flux, const std::vector<Atom>& atoms,
                                      double total_mass, double horizon) {
    WaitingTimeBounds b;
    double gamma = flux.sublinear_gap();
    if (!std::isfinite(gamma)) {
        b.instant = true;
        b.lower = 0.0;
        b.upper = 0.0;
        b.upper_available = true;
        b.note = "sublinear part unbounded: waiting time is 0";
        return b;
    }
    double biggest = 0.0;
    for (const Atom& a : atoms) biggest = std::max(biggest, a.mass);
    b.lower = gamma > 0.0 ? std::min(horizon, biggest / gamma) : horizon;

    auto try_pair = [&](const Flux& f) -> std::optional<double> {
        if (!f.h2_params()) return std::nullopt;
        auto [h, k] = *f.h2_params();
        double g = f.sublinear_gap();
        if (!(h > -1.0) || !(std::abs(k) < g)) return std::nullopt;
        return std::min(horizon, (h + 1.0) * total_mass / (g - std::abs(k)));
    };
    if (auto u = try_pair(flux)) {
        b.upper = *u;
        b.upper_available = true;
    } else if (flux.kind() != FluxKind::tabulated) {
        if (auto u = try_pair(flux.shifted(1.0))) {
            b.upper = *u;
            b.upper_available = true;
            b.note = "upper bound from the k=1 shifted flux";
        }
    }
    if (!b.upper_available) {
        b.upper = kInf;
        b.note = b.note.empty() ? "upper bound unavailable: catalog pair violates H > -1, |K| < gamma"
                                : b.note;
    }
    return b;
}

WaitingTimeReport estimate_waiting_time(const std::vector<const GridSolution*>& runs,
                                        const std::vector<Atom>& atoms, const Flux& flux,
                                        double horizon, const WaitingTimeOptions& opt) {
    if (runs.size() < 3)
        throw std::invalid_argument("estimate_waiting_time: need >= 3 levels");
    if (atoms.empty())
        throw std::invalid_argument("estimate_waiting_time: no atoms declared");
    std::vector<const GridSolution*> sorted = runs;
    std::sort(sorted.begin(), sorted.end(),
              [](const GridSolution* a, const GridSolution* b) {
                  return a->level() < b->level();
              });

    WaitingTimeReport rep;
    double total = 0.0;
    for (const Atom& a : atoms) total += a.mass;
    rep.bounds = waiting_time_bounds(flux, atoms, total, horizon);

    if (horizon < rep.bounds.lower) {
        rep.note = "horizon below the lower bound: waiting time >= horizon";
        return rep;
    }

    const auto& times = sorted.back()->times();
    rep.times.assign(times.begin(), times.end());
    double radius = opt.window_radius > 0.0
                        ? opt.window_radius
                        : 2.0 / sorted.front()->level() + 16.0 * sorted.back()->grid().dx();

    for (const GridSolution* run : sorted) {
        rep.levels.push_back(run->level());
        std::vector<double> mass_series, sup_series;
        for (double t : times) {
            double worst_frac = 0.0, sup = 0.0;
            for (const Atom& a : atoms) {
                if (t > 0.0) {
                    auto est = singular_mass(*run, a.x, t, a.mass);
                    worst_frac = std::max(worst_frac, est.value / std::max(a.mass, 1e-300));
                } else {
                    worst_frac = 1.0;
                }
                sup = std::max(sup, run->window_sup(a.x + flux.linear_rate() * t, radius, t));
            }
            mass_series.push_back(worst_frac);
            sup_series.push_back(sup);
        }
        rep.atom_mass_series.push_back(std::move(mass_series));
        rep.window_sup_series.push_back(std::move(sup_series));
    }

    auto clear_from = [&](const std::vector<double>& series, double eps) {
        // first index such that the condition holds at every later time
        size_t n = series.size();
        size_t idx = n;
        for (size_t j = n; j-- > 0;) {
            if (series[j] <= eps)
                idx = j;
            else
                break;
        }
        return idx;
    };

    const auto& top_mass = rep.atom_mass_series.back();
    const auto& second_mass = rep.atom_mass_series[rep.atom_mass_series.size() - 2];
    size_t j_top = clear_from(top_mass, opt.mass_eps_frac);
    size_t j_second = clear_from(second_mass, opt.mass_eps_frac);

    const auto& sup_top = rep.window_sup_series.back();
    const auto& sup_second = rep.window_sup_series[rep.window_sup_series.size() - 2];
    std::vector<double> sup_ratio_defect(times.size());
    for (size_t j = 0; j < times.size(); ++j) {
        double cap = (1.0 + opt.uniformity_tol) * sup_second[j] + opt.uniformity_floor;
        sup_ratio_defect[j] = sup_top[j] - cap;
    }
    size_t j_unif = clear_from(sup_ratio_defect, 0.0);

    size_t j0 = std::max(j_top, j_unif);
    if (j0 >= times.size()) {
        rep.note = "no clearance before the horizon";
        return rep;
    }
    rep.t0_estimate = times[j0];
    rep.estimate_found = true;
    // agreement across the top two levels accepts the estimate
    double snap_dt = times.size() > 1 ? times[1] - times[0] : horizon;
    rep.low_confidence = j_second >= times.size() ||
                         std::abs(times[j_second] - times[j_top]) > 2.0 * snap_dt + 1e-12;
    double lo = rep.bounds.lower * 0.95;
    double hi = rep.bounds.upper_available ? rep.bounds.upper * 1.05 : kInf;
    rep.estimate_in_bounds = rep.t0_estimate >= lo && rep.t0_estimate <= hi;
    return rep;
}

double kruzkov_residual(const SampledSolution& sol, const Flux& flux,
                        const KruzkovPair& pair, const SpaceTimeBump& zeta,
                        const std::vector<ExclusionWindow>& exclusions) {
    const Grid& g = sol.grid();
    const auto& times = sol.times();
    double dx = g.dx();
    double a = zeta.space.support_lo(), b = zeta.space.support_hi();
    double t_lo = zeta.time.support_lo(), t_hi = zeta.time.support_hi();
    for (const ExclusionWindow& w : exclusions) {
        for (double t : {std::max(t_lo, 0.0), std::min(t_hi, times.back())}) {
            double c = w.center(t);
            if (a < c + w.radius && b > c - w.radius)
                throw std::invalid_argument(
                    "kruzkov_residual: test function support touches an atom window");
        }
    }
    if (a < g.x_min || b > g.x_max)
        throw std::invalid_argument("kruzkov_residual: support leaves the grid");

    int i_lo = std::max(0, g.cell_of(a) - 1);
    int i_hi = std::min(g.n_cells - 1, g.cell_of(b) + 1);
    size_t j_lo = 0;
    while (j_lo + 1 < times.size() && times[j_lo + 1] <= t_lo) ++j_lo;
    size_t j_hi = times.size() - 1;
    while (j_hi > 0 && times[j_hi - 1] >= t_hi) --j_hi;

    double r = 0.0;
    for (size_t j = j_lo; j < j_hi; ++j) {
        const auto& f = sol.frame(j);
        double t = times[j], t_next = times[j + 1];
        double dt = t_next - t;
        double row_e = 0.0, row_f = 0.0;
        for (int i = i_lo; i <= i_hi; ++i) {
            double x = g.center(i);
            double u = f[i];
            double e = pair.entropy(u);
            double fq = pair.entropy_flux(flux, u);
            row_e += e * (zeta.value(x, t_next) - zeta.value(x, t));
            row_f += fq * (zeta.value(x + dx, t) - zeta.value(x, t));
        }
        r += row_e * dx + row_f * dt;
    }
    // initial pairing when the support reaches down to the first stored frame
    if (t_lo < times[j_lo] + 1e-14 && times[j_lo] <= 1e-12) {
        const auto& f0 = sol.frame(j_lo);
        double init = 0.0;
        for (int i = i_lo; i <= i_hi; ++i)
            init += pair.entropy(f0[i]) * zeta.value(g.center(i), times[j_lo]);
        r += init * dx;
    }
    return r;
}

double entropy_residual_budget(double dx, double tv_u0, double horizon,
                               const SpaceTimeBump& zeta) {
    return 10.0 * dx * tv_u0 * horizon * zeta.c1_norm();
}

double aronson_benilan_allowance(const Flux& flux, double dx, double t1, double t2) {
    auto hk = flux.h2_params();
    double h = hk ? hk->h : 0.0;
    return 5.0 * dx * flux.lipschitz() * (1.0 + std::pow(t2 / t1, h));
}

AronsonBenilanReport aronson_benilan_check(const SampledSolution& sol, const Flux& flux,
                                           double t1, double t2,
                                           const std::vector<ExclusionWindow>& exclusions,
                                           double eps) {
    if (!(t1 > 0.0) || !(t2 >= t1))
        throw std::invalid_argument("aronson_benilan_check: need 0 < t1 <= t2");
    if (!flux.h2_params())
        throw std::invalid_argument("aronson_benilan_check: flux has no (H, K) pair");
    Flux sub = flux.sublinear_part();
    auto [h, k] = *sub.h2_params();
    double ratio = t2 / t1;
    bool u_form = sub.kind() == FluxKind::power && sub.shift() == 0.0;
    double growth = u_form ? std::pow(ratio, 1.0 / (1.0 - sub.param())) : 0.0;

    const auto& f1 = sol.frame(sol.time_index(t1));
    const auto& f2 = sol.frame(sol.time_index(t2));
    const Grid& g = sol.grid();

    AronsonBenilanReport rep;
    rep.t1 = t1;
    rep.t2 = t2;
    rep.eps = eps;
    rep.u_form = u_form;
    rep.worst_margin = kInf;
    for (int i = 0; i < g.n_cells; ++i) {
        double x = g.center(i);
        bool skip = false;
        for (const ExclusionWindow& w : exclusions)
            if (w.covers(x, t1) || w.covers(x, t2)) skip = true;
        if (skip) continue;
        double u1 = std::max(f1[i], 0.0), u2 = std::max(f2[i], 0.0);
        double margin;
        if (u_form) {
            margin = growth * (1.0 + u1) - 1.0 - u2;
        } else if (h != 0.0) {
            margin = std::pow(ratio, h) * (sub.value(u1) + k / h) - (sub.value(u2) + k / h);
        } else {
            margin = (sub.value(u1) - k * std::log(t1)) - (sub.value(u2) - k * std::log(t2));
        }
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_at = x;
        }
    }
    rep.pass = rep.worst_margin >= -eps;
    return rep;
}

BlowupReport blowup_bound_check(const SampledSolution& sol, const Flux& flux, double x0,
                                double t, const std::vector<double>& offsets,
                                double eps_rel) {
    BlowupProfile prof(flux);
    BlowupReport rep;
    rep.side = flux.monotone_sign() >= 0 ? +1 : -1;
    double x_shift = flux.linear_rate() * t;
    rep.pass = true;
    for (double w : offsets) {
        BlowupPoint pt{};
        pt.x = x0 + x_shift + rep.side * w;
        double arg = prof.psi_inf() - w / t;
        if (arg <= 0.0) {
            pt.vacuous = true;
            pt.ok = true;
            pt.bound = 0.0;
            pt.value = sol.value_at(pt.x, t);
            rep.points.push_back(pt);
            continue;
        }
        pt.bound = prof.psi_inverse(arg);
        pt.value = sol.value_at(pt.x, t);
        pt.ok = pt.value >= pt.bound * (1.0 - eps_rel);
        if (!pt.ok) {
            rep.pass = false;
            rep.worst_deficit = std::max(rep.worst_deficit, pt.bound - pt.value);
        }
        rep.points.push_back(pt);
    }
    return rep;
}

double superlevel_measure(const SampledSolution& sol, double t, double threshold) {
    const auto& f = sol.frame(sol.time_index(t));
    int count = 0;
    for (double v : f)
        if (v > threshold) ++count;
    return count * sol.grid().dx();
}

namespace {

// conservative fractional-cell shift of a sampled density
std::vector<double> shift_density(const std::vector<double>& d, double cells) {
    int m = static_cast<int>(std::floor(cells));
    double f = cells - m;
    std::vector<double> out(d.size(), 0.0);
    int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i) {
        if (d[i] == 0.0) continue;
        int j = i + m;
        if (j >= 0 && j < n) out[j] += (1.0 - f) * d[i];
        if (j + 1 >= 0 && j + 1 < n) out[j + 1] += f * d[i];
    }
    return out;
}

}  // namespace

GalileanReport galilean_shift_check(const GridSolution& full, const GridSolution& reduced,
                                    double cphi, double tolerance) {
    if (!(full.grid() == reduced.grid()))
        throw std::invalid_argument("galilean_shift_check: grids differ");
    GalileanReport rep;
    rep.tolerance = tolerance;
    double dx = full.grid().dx();
    for (size_t j = 0; j < full.times().size(); ++j) {
        double t = full.times()[j];
        std::vector<double> shifted = shift_density(full.frame(j), -cphi * t / dx);
        const auto& ref = reduced.frame(reduced.time_index(t));
        std::vector<double> diff(shifted.size());
        for (size_t i = 0; i < shifted.size(); ++i) diff[i] = std::abs(shifted[i] - ref[i]);
        double dist = compensated_sum(diff) * dx;
        rep.times.push_back(t);
        rep.l1_distance.push_back(dist);
        rep.worst = std::max(rep.worst, dist);
    }
    rep.pass = rep.worst <= tolerance;
    return rep;
}

bool one_sided_flux_ordering(const SampledSolution& sol, const std::vector<double>& xs,
                             double t1, double t2, double eps) {
    for (double x : xs) {
        auto [left, right] = flux_time_side_limits(sol, x, t1, t2);
        if (left > right + eps) return false;
    }
    return true;
}

}  // namespace conslaw
