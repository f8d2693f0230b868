#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conslaw {

enum class FluxKind { power, exponential, logarithmic, loglog, linear, tabulated };

/// Constants for the structural inequality phi''(u)[H*phi(u)+K] <= -phi'(u)^2.
struct H2Pair {
    double h;
    double k;
};

struct StructuralConstants {
    double cphi;              // linear growth rate at infinity
    double lipschitz;         // M, global Lipschitz bound
    std::optional<H2Pair> h2; // catalog pair or user-supplied
    double gamma;             // lim |phi(u) - cphi*u|, +inf if unbounded
    int monotone_sign;        // sign of phi' - cphi: +1, -1 or 0
};

/// Sublinear-plus-linear flux family phi(u) = base(u + shift) - base(shift) + c*u.
/// The catalog bases keep closed-form derivatives and structural constants;
/// tabulated fluxes interpolate monotonically and never guess (H, K).
///
/// Negative arguments clamp to 0, so phi(u) = 0 for u < 0. Immutable after
/// construction and freely shareable across threads.
class Flux {
public:
    static constexpr double kDefaultUMax = 1e6;

    /// sgn(p) * [(1+u)^p - 1], p < 1, p != 0. Bounded iff p < 0.
    static Flux power(double p, double u_max = kDefaultUMax);
    /// 1 - exp(-alpha*u), alpha > 0.
    static Flux exponential(double alpha, double u_max = kDefaultUMax);
    /// log(1 + u).
    static Flux logarithmic(double u_max = kDefaultUMax);
    /// 1 - 1/log(e + u).
    static Flux loglog(double u_max = kDefaultUMax);
    /// c * u.
    static Flux linear(double c, double u_max = kDefaultUMax);
    /// Monotone shape-preserving cubic through (u_i, phi_i). h2 only if supplied.
    static Flux tabulated(std::vector<double> u, std::vector<double> phi,
                          std::optional<H2Pair> h2 = std::nullopt);

    double operator()(double u) const { return value(u); }
    double value(double u) const;
    double deriv(double u) const;
    double deriv2(double u) const;

    double linear_rate() const { return constants_.cphi; }     // C_phi
    double lipschitz() const { return constants_.lipschitz; }  // M
    const std::optional<H2Pair>& h2_params() const { return constants_.h2; }
    /// lim |phi(u) - C_phi*u|; +inf when the sublinear part is unbounded.
    double sublinear_gap() const { return constants_.gamma; }
    int monotone_sign() const { return constants_.monotone_sign; }
    bool sublinear_part_bounded() const;
    const StructuralConstants& constants() const { return constants_; }

    FluxKind kind() const { return kind_; }
    double param() const { return param_; }
    double shift() const { return shift_; }
    double linear_term() const { return linear_term_; }
    double u_max() const { return u_max_; }

    /// H*(phi(u) - C_phi*u) + K for the catalog pair, in a closed form that
    /// does not cancel at large u. Absent when no pair is known.
    std::optional<double> curvature_weight(double u) const;

    /// phi_k(u) = phi(u + k) - phi(k); carries the catalog (H, K) along.
    Flux shifted(double k) const;
    /// phi(u) + c*u.
    Flux with_linear_term(double c) const;
    /// phi(u) - C_phi*u, the sublinear part.
    Flux sublinear_part() const;
    /// Location of the interior maximum of phi, if phi' changes sign.
    std::optional<double> critical_point() const;

    std::string describe() const;

private:
    Flux() = default;
    double base_value(double u) const;
    double base_deriv(double u) const;
    double base_deriv2(double u) const;
    void finalize();

    FluxKind kind_ = FluxKind::linear;
    double param_ = 0.0;
    double shift_ = 0.0;
    double linear_term_ = 0.0;
    double u_max_ = kDefaultUMax;
    StructuralConstants constants_{};
    std::optional<H2Pair> user_h2_;

    // tabulated data (PCHIP slopes precomputed)
    std::vector<double> tab_u_, tab_phi_, tab_slope_;
};

struct HypothesisResult {
    std::string name;
    bool holds = false;
    double worst_margin = 0.0;  // most positive value of the defect; <= 0 passes
    double worst_abs = 0.0;     // largest |defect|; small means the pair saturates
    double worst_at = 0.0;
};

struct HypothesisReport {
    HypothesisResult h1;        // Lipschitz + phi(0)=0 + finite C_phi
    HypothesisResult h2;        // sign-definite inequality with (H, K)
    HypothesisResult h2_prime;  // same on phi - C_phi*u
    std::optional<HypothesisResult> h2_shift;  // (H2,k) on the shifted flux
    bool h3_feasible = false;
    double h3_smallest_l = 0.0;
    bool h3_tail_growing = false;  // required L still rising at the grid tail

    bool all_hold() const { return h1.holds && h2.holds && h2_prime.holds; }
};

/// Evaluate every structural hypothesis on the given sample grid.
/// samples must be nonempty, sorted, inside [0, u_max].
HypothesisReport check_hypotheses(const Flux& flux, std::span<const double> samples,
                                  std::optional<double> shift_k = std::nullopt);

/// Log-spaced sample grid over [0, hi] (default geometry used by the checks).
std::vector<double> log_sample_grid(double hi, int n = 2048);

/// Near-atom profile machinery: g = (H*phi + K)/phi' and Psi(y) = integral of
/// phi'/g from 0 to y, both on the sublinear part of the flux. Psi is
/// increasing with finite limit psi_inf when the flux is bounded; the lower
/// bound for the density near an atom is Psi^{-1}(psi_inf - offset/t).
class BlowupProfile {
public:
    explicit BlowupProfile(const Flux& flux);

    double g(double u) const;
    double psi(double y) const;
    double psi_inf() const { return psi_inf_; }
    /// Inverse on [0, psi_inf); returns +inf at psi_inf, 0 for z <= 0.
    double psi_inverse(double z) const;
    bool has_closed_form() const { return closed_form_; }
    /// Quadrature evaluation regardless of closed form (cross-check path).
    double psi_by_quadrature(double y) const;

private:
    Flux flux_;  // sublinear part
    H2Pair hk_{};
    bool closed_form_ = false;
    double psi_inf_ = 0.0;
};

}  // namespace conslaw
