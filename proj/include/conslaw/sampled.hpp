#pragma once

#include <memory>
#include <vector>

#include "conslaw/exact.hpp"
#include "conslaw/flux.hpp"
#include "conslaw/grid.hpp"
#include "conslaw/measure.hpp"

namespace conslaw {

/// Common sampled view of a space-time solution: cell values on a fixed grid
/// at a fixed list of times, the atoms carried alongside, and the flux time
/// integral whose side limits drive the singular-mass bookkeeping. Both the
/// finite-volume trajectories and the closed-form solutions implement it, so
/// every analysis check runs against either.
class SampledSolution {
public:
    virtual ~SampledSolution() = default;

    virtual const Grid& grid() const = 0;
    virtual const std::vector<double>& times() const = 0;
    virtual const std::vector<double>& frame(std::size_t j) const = 0;
    virtual std::vector<Atom> atoms_at(double /*t*/) const { return {}; }

    /// Phi(x, 0, t): time integral of the sublinear flux of the regular part
    /// at fixed x (the line x + C_phi*s when C_phi != 0 is handled by running
    /// the reduced problem).
    virtual double flux_time_integral(double x, double t) const = 0;

    std::size_t time_index(double t) const;
    double value_at(double x, double t) const;
    double l1_norm(std::size_t j) const;
    /// sup of the frame over |x - x0| <= radius.
    double window_sup(double x0, double radius, double t) const;
};

/// Closed-form unit-Dirac solution sampled onto a grid.
class ExactDiracSampled : public SampledSolution {
public:
    ExactDiracSampled(std::shared_ptr<const DiracExactSolution> exact, Grid grid,
                      std::vector<double> times);

    const Grid& grid() const override { return grid_; }
    const std::vector<double>& times() const override { return times_; }
    const std::vector<double>& frame(std::size_t j) const override { return frames_[j]; }
    std::vector<Atom> atoms_at(double t) const override;
    double flux_time_integral(double x, double t) const override;
    const DiracExactSolution& exact() const { return *exact_; }

private:
    std::shared_ptr<const DiracExactSolution> exact_;
    Grid grid_;
    std::vector<double> times_;
    Flux flux_;
    std::vector<std::vector<double>> frames_;
};

/// Non-uniqueness witness: the regular part evolves as the bounded entropy
/// solution of the atom-free datum while the atoms ride along x = x_l + C_phi*t
/// with frozen mass. A valid entropy solution that violates the near-atom
/// blow-up lower bound.
class FrozenDiracSolution : public SampledSolution {
public:
    FrozenDiracSolution(std::shared_ptr<const SampledSolution> regular_part,
                        std::vector<Atom> atoms, double cphi);

    const Grid& grid() const override { return regular_->grid(); }
    const std::vector<double>& times() const override { return regular_->times(); }
    const std::vector<double>& frame(std::size_t j) const override {
        return regular_->frame(j);
    }
    std::vector<Atom> atoms_at(double t) const override;
    double flux_time_integral(double x, double t) const override {
        return regular_->flux_time_integral(x, t);
    }

private:
    std::shared_ptr<const SampledSolution> regular_;
    std::vector<Atom> atoms_;
    double cphi_;
};

}  // namespace conslaw
