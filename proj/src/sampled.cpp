#include "conslaw/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

std::size_t SampledSolution::time_index(double t) const {
    const auto& ts = times();
    if (ts.empty()) throw std::runtime_error("SampledSolution: no stored times");
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t j = it - ts.begin();
    if (j == ts.size()) j = ts.size() - 1;
    if (j > 0 && std::abs(ts[j - 1] - t) < std::abs(ts[j] - t)) --j;
    if (std::abs(ts[j] - t) > 1e-9 * std::max(1.0, std::abs(t)) + 1e-12)
        throw std::invalid_argument("SampledSolution: no frame stored near t");
    return j;
}

double SampledSolution::value_at(double x, double t) const {
    return frame(time_index(t))[grid().cell_of(x)];
}

double SampledSolution::l1_norm(std::size_t j) const {
    const auto& f = frame(j);
    std::vector<double> a(f.size());
    for (size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
    return compensated_sum(a) * grid().dx();
}

double SampledSolution::window_sup(double x0, double radius, double t) const {
    const auto& f = frame(time_index(t));
    const Grid& g = grid();
    double s = 0.0;
    int lo = g.cell_of(x0 - radius), hi = g.cell_of(x0 + radius);
    for (int i = lo; i <= hi; ++i)
        if (std::abs(g.center(i) - x0) <= radius) s = std::max(s, f[i]);
    return s;
}

ExactDiracSampled::ExactDiracSampled(std::shared_ptr<const DiracExactSolution> exact,
                                     Grid grid, std::vector<double> times)
    : exact_(std::move(exact)),
      grid_(grid),
      times_(std::move(times)),
      flux_(Flux::power(exact_->p())) {
    frames_.reserve(times_.size());
    for (double t : times_) {
        std::vector<double> f(grid_.n_cells);
        for (int i = 0; i < grid_.n_cells; ++i)
            f[i] = t > 0.0 ? exact_->regular(grid_.center(i), t) : 0.0;
        frames_.push_back(std::move(f));
    }
}

std::vector<Atom> ExactDiracSampled::atoms_at(double t) const {
    if (t <= 0.0) return {{0.0, 1.0}};
    double m = exact_->atom_mass(t);
    if (m > 0.0) return {{0.0, m}};
    return {};
}

double ExactDiracSampled::flux_time_integral(double x, double t) const {
    if (x <= 0.0 || t <= 0.0) return 0.0;
    double p = exact_->p();
    double s_fan = x / std::abs(p);  // leading edge reaches x
    if (s_fan >= t) return 0.0;
    double s_hi = t;
    const ShockCurve& shock = exact_->shock();
    if (shock.position(t) > x) {
        // the shock overtakes x inside (t_birth, t)
        s_hi = bisect([&](double s) { return shock.position(s) - x; },
                      shock.t_birth, t, 1e-12);
    }
    if (s_hi <= s_fan) return 0.0;
    auto integrand = [&](double s) {
        return flux_.value(exact_->regular(x, s));
    };
    return integrate(integrand, s_fan, s_hi, 1e-12, 1e-10);
}

FrozenDiracSolution::FrozenDiracSolution(std::shared_ptr<const SampledSolution> regular_part,
                                         std::vector<Atom> atoms, double cphi)
    : regular_(std::move(regular_part)), atoms_(std::move(atoms)), cphi_(cphi) {}

std::vector<Atom> FrozenDiracSolution::atoms_at(double t) const {
    std::vector<Atom> out = atoms_;
    for (Atom& a : out) a.x += cphi_ * t;
    return out;
}

}  // namespace conslaw
