#pragma once

#include <vector>

#include "conslaw/grid.hpp"

namespace conslaw {

struct Atom {
    double x;
    double mass;
};

/// C1 bump supported on [a, b]: (1 - s^2)^2 in the scaled coordinate.
/// Vanishes with its derivative at the endpoints.
class TestFunction {
public:
    TestFunction(double a, double b, double amplitude = 1.0);

    double value(double x) const;
    double deriv(double x) const;
    double operator()(double x) const { return value(x); }
    double support_lo() const { return a_; }
    double support_hi() const { return b_; }
    double amplitude() const { return amp_; }
    double deriv_bound() const;  // max |rho'|

private:
    double a_, b_, amp_;
};

/// Separable space-time bump zeta(x, t) = X(x) * T(t), C1 with compact support.
struct SpaceTimeBump {
    TestFunction space;
    TestFunction time;

    double value(double x, double t) const { return space.value(x) * time.value(t); }
    double dt(double x, double t) const { return space.value(x) * time.deriv(t); }
    double dx(double x, double t) const { return space.deriv(x) * time.value(t); }
    /// max of |zeta|, |zeta_t|, |zeta_x| over the support.
    double c1_norm() const;
};

/// Nonnegative finite measure on the line: an absolutely continuous part held
/// as cell averages plus finitely many atoms. The atoms are the singular part
/// and stay symbolic; only dirac_regularize turns them into pulses.
class RadonMeasure {
public:
    RadonMeasure(Grid grid, std::vector<double> density, std::vector<Atom> atoms);
    static RadonMeasure zero(Grid grid);
    static RadonMeasure dirac(Grid grid, double x, double mass);
    /// Density c on [a, b], no atoms.
    static RadonMeasure indicator(Grid grid, double a, double b, double height);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& density() const { return density_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    double total_mass() const;
    double density_mass() const;
    double atom_mass() const;

    /// Shift the whole measure by a. Atoms move exactly; the density is
    /// resampled conservatively onto the same grid. Throws if the density
    /// support would leave the grid.
    RadonMeasure translated(double a) const;

    /// <m, rho> = integral of rho against the measure.
    double pair(const TestFunction& rho) const;

    /// Replace each atom (x, c) by a rectangular pulse on (x - 1/n, x + 1/n)
    /// snapped to cell faces, heights adjusted so the discrete mass is exactly
    /// c. Throws if a pulse would span fewer than 2 cells.
    std::vector<double> regularized_density(int n) const;

private:
    Grid grid_;
    std::vector<double> density_;
    std::vector<Atom> atoms_;
};

}  // namespace conslaw
