#include "conslaw/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

namespace {

double sgn(double p) { return p > 0 ? 1.0 : -1.0; }

}  // namespace

double fan_value(double p, double x_c, double x, double t) {
    if (t <= 0.0 || x <= x_c) return 0.0;
    double r = std::abs(p) * t / (x - x_c);
    if (r <= 1.0) return 0.0;
    return std::pow(r, 1.0 / (1.0 - p)) - 1.0;
}

double fan_shock_speed(double p, double x_c, double x, double t) {
    double r = std::abs(p) * t / (x - x_c);
    if (r <= 1.0 + 1e-9) return std::abs(p) * sgn(p);  // u+ -> 0 limit is phi'(0)
    double num = std::pow(r, p / (1.0 - p)) - 1.0;
    double den = std::pow(r, 1.0 / (1.0 - p)) - 1.0;
    return sgn(p) * num / den;
}

double fan_mass(double p, double x_c, double x_lo, double x_hi, double t) {
    double a = 1.0 / (1.0 - p);
    double c = std::pow(std::abs(p) * t, a) / (1.0 - a);
    auto antideriv = [&](double w) {
        if (w <= 0.0) {
            if (a < 1.0) return 0.0;
            throw std::domain_error("fan_mass: lower limit at the fan center diverges");
        }
        return c * std::pow(w, 1.0 - a) - w;
    };
    return antideriv(x_hi - x_c) - antideriv(x_lo - x_c);
}

ShockCurve integrate_fan_shock(double p, double x_c, double t0, double xi0,
                               double horizon,
                               const std::function<double(double)>& mass_locator,
                               double boot_dt) {
    ShockCurve curve;
    curve.t_birth = t0;
    curve.birth_position = xi0;

    double t_start = t0, xi_start = xi0;
    if (xi0 <= x_c + 1e-300) {
        // Degenerate start: the ODE right-hand side is 0/indeterminate at the
        // fan center, so seed the first point from mass conservation.
        t_start = t0 + boot_dt;
        xi_start = mass_locator(t_start);
        curve.startup = "mass-conservation bootstrap";
    } else {
        curve.startup = "direct";
    }
    if (t_start >= horizon) {
        curve.table.t = {t_start};
        curve.table.y = {xi_start};
        curve.table.dy = {fan_shock_speed(p, x_c, xi_start, t_start)};
        curve.table.complete = true;
        return curve;
    }

    auto rhs = [p, x_c](double t, double xi) {
        if (xi <= x_c) return 0.0;
        return fan_shock_speed(p, x_c, xi, t);
    };
    curve.table = integrate_rk45(rhs, t_start, xi_start, horizon, 1e-9, 1e-12);
    if (!curve.table.complete)
        throw std::runtime_error("integrate_fan_shock: " + curve.table.message);

    // Rankine-Hugoniot residual of the dense output at interval midpoints.
    const auto& tab = curve.table;
    for (size_t i = 0; i + 1 < tab.t.size(); ++i) {
        double tm = 0.5 * (tab.t[i] + tab.t[i + 1]);
        double res = std::abs(tab.slope(tm) - rhs(tm, tab.value(tm)));
        curve.max_rh_residual = std::max(curve.max_rh_residual, res);
    }
    return curve;
}

DiracExactSolution::DiracExactSolution(double p, double horizon)
    : p_(p), horizon_(horizon) {
    if (!(p < 1.0) || p == 0.0)
        throw std::invalid_argument("DiracExactSolution: need p < 1, p != 0");
    if (!(horizon > 0.0))
        throw std::invalid_argument("DiracExactSolution: need horizon > 0");
    double t_birth = p < 0.0 ? 1.0 : 0.0;
    auto locator = [p](double t) { return shock_from_mass(p, t); };
    if (horizon > t_birth)
        shock_ = integrate_fan_shock(p, 0.0, t_birth, 0.0, horizon, locator);
    else {
        shock_.t_birth = t_birth;
        shock_.birth_position = 0.0;
        shock_.startup = "not born before horizon";
        shock_.table.t = {t_birth};
        shock_.table.y = {0.0};
        shock_.table.dy = {0.0};
        shock_.table.complete = true;
    }
}

double DiracExactSolution::require_time(double t) const {
    if (!(t > 0.0) || t > horizon_ + 1e-12)
        throw std::domain_error("DiracExactSolution: time outside (0, T]");
    return std::min(t, horizon_);
}

double DiracExactSolution::regular(double x, double t) const {
    t = require_time(t);
    double xi = shock_.position(t);
    if (x < xi) return 0.0;
    return fan_value(p_, 0.0, x, t);
}

double DiracExactSolution::atom_mass(double t) const {
    t = require_time(t);
    return p_ < 0.0 ? std::max(1.0 - t, 0.0) : 0.0;
}

double DiracExactSolution::regular_mass(double t) const {
    t = require_time(t);
    double xi = shock_.position(t);
    double edge = std::abs(p_) * t;
    if (xi >= edge) return 0.0;
    if (xi == 0.0 && p_ > 0.0)
        throw std::domain_error("DiracExactSolution: mass diverges at the fan center");
    return fan_mass(p_, 0.0, xi, edge, t);
}

double DiracExactSolution::sup_regular(double t) const {
    t = require_time(t);
    double xi = shock_.position(t);
    if (xi <= 0.0) return kInf;
    return fan_value(p_, 0.0, xi, t);
}

double DiracExactSolution::shock_from_mass(double p, double t) {
    double singular = p < 0.0 ? std::max(1.0 - t, 0.0) : 0.0;
    if (p < 0.0 && t <= 1.0) return 0.0;  // all regular mass fits: xi = 0
    double edge = std::abs(p) * t;
    double target = 1.0 - singular;
    auto f = [&](double xi) { return fan_mass(p, 0.0, xi, edge, t) - target; };
    double lo = edge * 1e-14, hi = edge * (1.0 - 1e-14);
    return bisect(f, lo, hi, edge * 1e-14);
}

PulseExactSolution::PulseExactSolution(int n, double p, double horizon)
    : n_(n), p_(p), horizon_(horizon) {
    if (n <= 0) throw std::invalid_argument("PulseExactSolution: need n > 0");
    if (!(p < 1.0) || p == 0.0)
        throw std::invalid_argument("PulseExactSolution: need p < 1, p != 0");
    double h = 0.5 * n;
    double phi_h = sgn(p) * (std::pow(1.0 + h, p) - 1.0);
    double dphi_h = std::abs(p) * std::pow(1.0 + h, p - 1.0);
    double denom = phi_h - h * dphi_h;
    t_n_ = 1.0 / denom;
    x_n_ = (phi_h + h * dphi_h) / (n * denom);
    left_edge_speed_ = phi_h / h;
    fan_boundary_slope_ = std::pow(2.0 / (n + 2.0), 1.0 - p) * std::abs(p);
    if (horizon > t_n_) {
        auto locator = [n, p](double t) { return shock_from_mass(n, p, t); };
        shock_ = integrate_fan_shock(p, 1.0 / n, t_n_, x_n_, horizon, locator);
    } else {
        shock_.t_birth = t_n_;
        shock_.birth_position = x_n_;
        shock_.startup = "not born before horizon";
        shock_.table.t = {t_n_};
        shock_.table.y = {x_n_};
        shock_.table.dy = {fan_shock_speed(p, 1.0 / n, x_n_, t_n_)};
        shock_.table.complete = true;
    }
}

double PulseExactSolution::value(double x, double t) const {
    if (t < 0.0) throw std::domain_error("PulseExactSolution: t must be >= 0");
    double inv_n = 1.0 / n_;
    if (t <= t_n_) {
        if (x >= std::abs(p_) * t + inv_n) return 0.0;
        if (x >= fan_boundary_slope_ * t + inv_n) return fan_value(p_, inv_n, x, t);
        if (x >= left_edge_speed_ * t - inv_n) return 0.5 * n_;
        return 0.0;
    }
    if (!shock_.covers(t))
        throw std::domain_error("PulseExactSolution: t beyond the shock table horizon");
    if (x >= std::abs(p_) * t + inv_n) return 0.0;
    if (x >= shock_.position(t)) return fan_value(p_, inv_n, x, t);
    return 0.0;
}

double PulseExactSolution::shock_from_mass(int n, double p, double t) {
    double inv_n = 1.0 / n;
    double edge = std::abs(p) * t + inv_n;
    auto f = [&](double xi) { return fan_mass(p, inv_n, xi, edge, t) - 1.0; };
    double span = edge - inv_n;
    return bisect(f, inv_n + span * 1e-14, edge - span * 1e-14, span * 1e-14);
}

}  // namespace conslaw
