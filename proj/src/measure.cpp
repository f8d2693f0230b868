#include "conslaw/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

TestFunction::TestFunction(double a, double b, double amplitude)
    : a_(a), b_(b), amp_(amplitude) {
    if (!(b > a)) throw std::invalid_argument("TestFunction: need b > a");
}

double TestFunction::value(double x) const {
    double s = (2.0 * x - a_ - b_) / (b_ - a_);
    if (s <= -1.0 || s >= 1.0) return 0.0;
    double w = 1.0 - s * s;
    return amp_ * w * w;
}

double TestFunction::deriv(double x) const {
    double s = (2.0 * x - a_ - b_) / (b_ - a_);
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return amp_ * (-4.0 * s * (1.0 - s * s)) * 2.0 / (b_ - a_);
}

double TestFunction::deriv_bound() const {
    // max of |4s(1-s^2)| on [-1,1] is at s = 1/sqrt(3).
    double s = 1.0 / std::sqrt(3.0);
    return std::abs(amp_) * 4.0 * s * (1.0 - s * s) * 2.0 / (b_ - a_);
}

double SpaceTimeBump::c1_norm() const {
    double v = std::abs(space.amplitude() * time.amplitude());
    double vx = space.deriv_bound() * std::abs(time.amplitude());
    double vt = std::abs(space.amplitude()) * time.deriv_bound();
    return std::max({v, vx, vt});
}

RadonMeasure::RadonMeasure(Grid grid, std::vector<double> density, std::vector<Atom> atoms)
    : grid_(grid), density_(std::move(density)), atoms_(std::move(atoms)) {
    if (static_cast<int>(density_.size()) != grid_.n_cells)
        throw std::invalid_argument("RadonMeasure: density size != n_cells");
    for (double v : density_)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("RadonMeasure: density must be finite and >= 0");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.x < b.x; });
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].mass < 0.0)
            throw std::invalid_argument("RadonMeasure: atom mass must be >= 0");
        if (i > 0 && !(atoms_[i].x > atoms_[i - 1].x))
            throw std::invalid_argument("RadonMeasure: atom locations must be distinct");
    }
}

RadonMeasure RadonMeasure::zero(Grid grid) {
    return RadonMeasure(grid, std::vector<double>(grid.n_cells, 0.0), {});
}

RadonMeasure RadonMeasure::dirac(Grid grid, double x, double mass) {
    return RadonMeasure(grid, std::vector<double>(grid.n_cells, 0.0), {{x, mass}});
}

RadonMeasure RadonMeasure::indicator(Grid grid, double a, double b, double height) {
    std::vector<double> d(grid.n_cells, 0.0);
    double dx = grid.dx();
    for (int i = 0; i < grid.n_cells; ++i) {
        double lo = std::max(a, grid.face(i));
        double hi = std::min(b, grid.face(i + 1));
        if (hi > lo) d[i] = height * (hi - lo) / dx;
    }
    return RadonMeasure(grid, std::move(d), {});
}

double RadonMeasure::density_mass() const {
    return compensated_sum(density_) * grid_.dx();
}

double RadonMeasure::atom_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
}

double RadonMeasure::total_mass() const { return density_mass() + atom_mass(); }

RadonMeasure RadonMeasure::translated(double a) const {
    double dx = grid_.dx();
    // support of the density
    int first = -1, last = -1;
    for (int i = 0; i < grid_.n_cells; ++i)
        if (density_[i] != 0.0) {
            if (first < 0) first = i;
            last = i;
        }
    if (first >= 0) {
        double lo = grid_.face(first) + a, hi = grid_.face(last + 1) + a;
        if (lo < grid_.x_min - 1e-12 || hi > grid_.x_max + 1e-12)
            throw std::domain_error("translate: shifted density support leaves the grid");
    }
    // conservative resample: shift = whole cells + fraction, each source cell
    // splits its mass between two target cells
    double cells = a / dx;
    int m = static_cast<int>(std::floor(cells));
    double f = cells - m;
    std::vector<double> nd(grid_.n_cells, 0.0);
    for (int i = 0; i < grid_.n_cells; ++i) {
        if (density_[i] == 0.0) continue;
        int j = i + m;
        if (j >= 0 && j < grid_.n_cells) nd[j] += (1.0 - f) * density_[i];
        if (j + 1 >= 0 && j + 1 < grid_.n_cells) nd[j + 1] += f * density_[i];
    }
    std::vector<Atom> na = atoms_;
    for (Atom& at : na) at.x += a;
    return RadonMeasure(grid_, std::move(nd), std::move(na));
}

double RadonMeasure::pair(const TestFunction& rho) const {
    if (rho.support_lo() < grid_.x_min || rho.support_hi() > grid_.x_max)
        throw std::domain_error("pair: test function support leaves the grid");
    std::vector<double> terms;
    terms.reserve(density_.size());
    for (int i = 0; i < grid_.n_cells; ++i)
        terms.push_back(density_[i] * rho.value(grid_.center(i)));
    double s = compensated_sum(terms) * grid_.dx();
    for (const Atom& a : atoms_) s += a.mass * rho.value(a.x);
    return s;
}

std::vector<double> RadonMeasure::regularized_density(int n) const {
    if (n <= 0) throw std::invalid_argument("regularized_density: need n > 0");
    std::vector<double> d = density_;
    double dx = grid_.dx();
    for (const Atom& a : atoms_) {
        if (a.mass == 0.0) continue;
        int j_lo = grid_.face_of(a.x - 1.0 / n);
        int j_hi = grid_.face_of(a.x + 1.0 / n);
        if (j_hi - j_lo < 2)
            throw std::domain_error(
                "regularized_density: grid too coarse, pulse spans fewer than 2 cells");
        double width = (j_hi - j_lo) * dx;
        double height = a.mass / width;  // discrete mass exactly a.mass
        for (int i = j_lo; i < j_hi; ++i) d[i] += height;
    }
    return d;
}

}  // namespace conslaw
