#pragma once

#include <string>
#include <vector>

#include "conslaw/flux.hpp"
#include "conslaw/rk45.hpp"

namespace conslaw {

/// Tabulated shock trajectory (t, xi(t)) with cubic Hermite interpolation and
/// a Rankine-Hugoniot residual diagnostic. The left state is always 0, so the
/// shock speed is phi(u+)/u+ with u+ taken from the rarefaction fan behind it.
struct ShockCurve {
    OdeTable table;
    double t_birth = 0.0;       // xi(t_birth) is the first tabulated point
    double birth_position = 0.0;
    double max_rh_residual = 0.0;
    std::string startup;        // how the first step was seeded

    double position(double t) const {
        if (t <= t_birth) return birth_position;
        return table.value(t);
    }
    double speed(double t) const { return t <= t_birth ? 0.0 : table.slope(t); }
    bool covers(double t) const { return t <= t_birth || table.covers(t); }
};

/// Value of the self-similar fan centered at x_c:
/// u = (|p| t / (x - x_c))^{1/(1-p)} - 1 for x > x_c, 0 otherwise.
double fan_value(double p, double x_c, double x, double t);

/// Rankine-Hugoniot speed of the shock sitting at x inside the fan.
double fan_shock_speed(double p, double x_c, double x, double t);

/// Mass of the fan density between x_lo and x_hi at time t (closed-form
/// antiderivative of the fan profile).
double fan_mass(double p, double x_c, double x_lo, double x_hi, double t);

/// Entropy solution of the unit-Dirac problem with flux sgn(p)[(1+u)^p - 1].
/// For p < 0 the atom at the origin persists with mass max(1-t, 0) and a shock
/// is born at t = 1; for 0 < p < 1 the atom vanishes instantly and the shock
/// starts at t = 0. The regular part is the fan restricted to the region
/// between the shock and the leading edge x = |p| t.
class DiracExactSolution {
public:
    DiracExactSolution(double p, double horizon);

    double p() const { return p_; }
    double horizon() const { return horizon_; }
    const ShockCurve& shock() const { return shock_; }

    double regular(double x, double t) const;       // u_r(x, t)
    double atom_mass(double t) const;               // mass at the origin
    double regular_mass(double t) const;            // closed-form integral of u_r
    double sup_regular(double t) const;             // max of u_r(., t)

    /// Independent locator: solve mass conservation for the shock position.
    static double shock_from_mass(double p, double t);

private:
    double require_time(double t) const;
    double p_;
    double horizon_;
    ShockCurve shock_;
};

/// Entropy solution of the rectangular-pulse problem with datum
/// (n/2) on (-1/n, 1/n), same flux family. Piecewise formula up to the
/// breakdown time t_n, then a tracked shock from x_n.
class PulseExactSolution {
public:
    PulseExactSolution(int n, double p, double horizon);

    int level() const { return n_; }
    double p() const { return p_; }
    double breakdown_time() const { return t_n_; }
    double shock_origin() const { return x_n_; }
    const ShockCurve& shock() const { return shock_; }

    double value(double x, double t) const;

    /// Mass-conservation locator for the post-breakdown shock.
    static double shock_from_mass(int n, double p, double t);

private:
    int n_;
    double p_;
    double horizon_;
    double t_n_, x_n_;
    double left_edge_speed_;   // phi(n/2)/(n/2)
    double fan_boundary_slope_;  // (2/(n+2))^{1-p} |p|
    ShockCurve shock_;
};

/// Integrate the shock ODE xi' = phi(u+)/u+ through the fan centered at x_c.
/// A degenerate start (xi(t0) = x_c) is bootstrapped by the supplied locator
/// at t0 + boot_dt, because the ODE right-hand side is indeterminate there.
ShockCurve integrate_fan_shock(double p, double x_c, double t0, double xi0,
                               double horizon,
                               const std::function<double(double)>& mass_locator,
                               double boot_dt = 1e-4);

}  // namespace conslaw
