#include "conslaw/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conslaw/numerics.hpp"

namespace conslaw {

namespace {

void require_finite(double u) {
    if (!std::isfinite(u)) throw std::domain_error("flux: non-finite argument");
}

// Fritsch-Carlson monotone cubic slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    std::vector<double> d(n - 1), m(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            double w1 = 2 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            double w2 = (x[i + 1] - x[i]) + 2 * (x[i] - x[i - 1]);
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // limit endpoint slopes to preserve monotonicity
    auto clip = [](double mi, double di) {
        if (di == 0.0) return 0.0;
        double a = mi / di;
        return a < 0.0 ? 0.0 : (a > 3.0 ? 3.0 * di : mi);
    };
    m[0] = clip(m[0], d[0]);
    m[n - 1] = clip(m[n - 1], d[n - 2]);
    return m;
}

}  // namespace

Flux Flux::power(double p, double u_max) {
    if (!(p < 1.0) || p == 0.0)
        throw std::invalid_argument("Flux::power: need p < 1, p != 0");
    Flux f;
    f.kind_ = FluxKind::power;
    f.param_ = p;
    f.u_max_ = u_max;
    f.finalize();
    return f;
}

Flux Flux::exponential(double alpha, double u_max) {
    if (!(alpha > 0.0)) throw std::invalid_argument("Flux::exponential: need alpha > 0");
    Flux f;
    f.kind_ = FluxKind::exponential;
    f.param_ = alpha;
    f.u_max_ = u_max;
    f.finalize();
    return f;
}

Flux Flux::logarithmic(double u_max) {
    Flux f;
    f.kind_ = FluxKind::logarithmic;
    f.u_max_ = u_max;
    f.finalize();
    return f;
}

Flux Flux::loglog(double u_max) {
    Flux f;
    f.kind_ = FluxKind::loglog;
    f.u_max_ = u_max;
    f.finalize();
    return f;
}

Flux Flux::linear(double c, double u_max) {
    Flux f;
    f.kind_ = FluxKind::linear;
    f.param_ = c;
    f.u_max_ = u_max;
    f.finalize();
    return f;
}

Flux Flux::tabulated(std::vector<double> u, std::vector<double> phi,
                     std::optional<H2Pair> h2) {
    if (u.size() < 2 || u.size() != phi.size())
        throw std::invalid_argument("Flux::tabulated: need >= 2 matching samples");
    if (u.front() != 0.0 || phi.front() != 0.0)
        throw std::invalid_argument("Flux::tabulated: table must start at (0, 0)");
    for (size_t i = 0; i + 1 < u.size(); ++i)
        if (!(u[i + 1] > u[i]))
            throw std::invalid_argument("Flux::tabulated: u samples must increase");
    Flux f;
    f.kind_ = FluxKind::tabulated;
    f.u_max_ = u.back();
    f.tab_slope_ = pchip_slopes(u, phi);
    f.tab_u_ = std::move(u);
    f.tab_phi_ = std::move(phi);
    f.user_h2_ = h2;
    f.finalize();
    return f;
}

double Flux::base_value(double u) const {
    switch (kind_) {
        case FluxKind::power: {
            double p = param_;
            double s = p > 0 ? 1.0 : -1.0;
            // fast paths for the common exponents (hot loop of the solver)
            double w = 1.0 + u;
            if (p == -1.0) return -(1.0 / w - 1.0);
            if (p == -0.5) return -(1.0 / std::sqrt(w) - 1.0);
            if (p == 0.5) return std::sqrt(w) - 1.0;
            return s * (std::pow(w, p) - 1.0);
        }
        case FluxKind::exponential:
            return 1.0 - std::exp(-param_ * u);
        case FluxKind::logarithmic:
            return std::log1p(u);
        case FluxKind::loglog:
            return 1.0 - 1.0 / std::log(std::exp(1.0) + u);
        case FluxKind::linear:
            return param_ * u;
        case FluxKind::tabulated: {
            if (u >= tab_u_.back())
                return tab_phi_.back() +
                       tab_slope_.back() * (u - tab_u_.back());
            size_t hi = std::upper_bound(tab_u_.begin(), tab_u_.end(), u) - tab_u_.begin();
            if (hi == 0) return tab_phi_.front();
            size_t lo = hi - 1;
            double h = tab_u_[hi] - tab_u_[lo];
            double x = (u - tab_u_[lo]) / h;
            double x2 = x * x, x3 = x2 * x;
            return (2 * x3 - 3 * x2 + 1) * tab_phi_[lo] +
                   (x3 - 2 * x2 + x) * h * tab_slope_[lo] +
                   (-2 * x3 + 3 * x2) * tab_phi_[hi] + (x3 - x2) * h * tab_slope_[hi];
        }
    }
    return 0.0;
}

double Flux::base_deriv(double u) const {
    switch (kind_) {
        case FluxKind::power: {
            double w = 1.0 + u;
            if (param_ == -1.0) return 1.0 / (w * w);
            if (param_ == 0.5) return 0.5 / std::sqrt(w);
            return std::abs(param_) * std::pow(w, param_ - 1.0);
        }
        case FluxKind::exponential:
            return param_ * std::exp(-param_ * u);
        case FluxKind::logarithmic:
            return 1.0 / (1.0 + u);
        case FluxKind::loglog: {
            double l = std::log(std::exp(1.0) + u);
            return 1.0 / ((std::exp(1.0) + u) * l * l);
        }
        case FluxKind::linear:
            return param_;
        case FluxKind::tabulated: {
            if (u >= tab_u_.back()) return tab_slope_.back();
            size_t hi = std::upper_bound(tab_u_.begin(), tab_u_.end(), u) - tab_u_.begin();
            if (hi == 0) return tab_slope_.front();
            size_t lo = hi - 1;
            double h = tab_u_[hi] - tab_u_[lo];
            double x = (u - tab_u_[lo]) / h;
            double x2 = x * x;
            return ((6 * x2 - 6 * x) * tab_phi_[lo] / h + (3 * x2 - 4 * x + 1) * tab_slope_[lo] +
                    (-6 * x2 + 6 * x) * tab_phi_[hi] / h + (3 * x2 - 2 * x) * tab_slope_[hi]);
        }
    }
    return 0.0;
}

double Flux::base_deriv2(double u) const {
    switch (kind_) {
        case FluxKind::power:
            return std::abs(param_) * (param_ - 1.0) * std::pow(1.0 + u, param_ - 2.0);
        case FluxKind::exponential:
            return -param_ * param_ * std::exp(-param_ * u);
        case FluxKind::logarithmic:
            return -1.0 / ((1.0 + u) * (1.0 + u));
        case FluxKind::loglog: {
            double e = std::exp(1.0);
            double l = std::log(e + u);
            return -(l + 2.0) / ((e + u) * (e + u) * l * l * l);
        }
        case FluxKind::linear:
            return 0.0;
        case FluxKind::tabulated: {
            if (u >= tab_u_.back()) return 0.0;
            size_t hi = std::upper_bound(tab_u_.begin(), tab_u_.end(), u) - tab_u_.begin();
            if (hi == 0) return 0.0;
            size_t lo = hi - 1;
            double h = tab_u_[hi] - tab_u_[lo];
            double x = (u - tab_u_[lo]) / h;
            return ((12 * x - 6) * (tab_phi_[lo] - tab_phi_[hi]) / (h * h) +
                    (6 * x - 4) * tab_slope_[lo] / h + (6 * x - 2) * tab_slope_[hi] / h);
        }
    }
    return 0.0;
}

double Flux::value(double u) const {
    require_finite(u);
    if (u <= 0.0) return 0.0;
    return base_value(u + shift_) - base_value(shift_) + linear_term_ * u;
}

double Flux::deriv(double u) const {
    require_finite(u);
    if (u < 0.0) u = 0.0;
    return base_deriv(u + shift_) + linear_term_;
}

double Flux::deriv2(double u) const {
    require_finite(u);
    if (u < 0.0) u = 0.0;
    return base_deriv2(u + shift_);
}

void Flux::finalize() {
    StructuralConstants c{};
    c.cphi = linear_term_;
    double gamma_base = kInf;
    switch (kind_) {
        case FluxKind::power: {
            if (param_ < 0.0) gamma_base = std::pow(1.0 + shift_, param_);
            double h = param_ / (1.0 - param_);
            c.h2 = H2Pair{h, std::abs(h) * std::pow(1.0 + shift_, param_)};
            break;
        }
        case FluxKind::exponential:
            gamma_base = std::exp(-param_ * shift_);
            c.h2 = H2Pair{-1.0, std::exp(-param_ * shift_)};
            break;
        case FluxKind::logarithmic:
            c.h2 = H2Pair{0.0, 1.0};
            break;
        case FluxKind::loglog: {
            double l = std::log(std::exp(1.0) + shift_);
            gamma_base = 1.0 / l;
            c.h2 = H2Pair{0.0, 1.0 / (l * l)};
            break;
        }
        case FluxKind::linear:
            gamma_base = 0.0;
            c.cphi += param_;
            break;
        case FluxKind::tabulated: {
            // Sampled estimates; (H, K) only if the user supplied them.
            c.cphi = linear_term_ + tab_slope_.back();
            double m = 0.0;
            for (double s : tab_slope_) m = std::max(m, std::abs(s + linear_term_));
            c.lipschitz = 1.05 * m;
            gamma_base = std::abs(base_value(tab_u_.back()) - tab_slope_.back() * tab_u_.back());
            c.h2 = user_h2_;
            break;
        }
    }
    c.gamma = gamma_base;
    if (kind_ != FluxKind::tabulated) {
        double d0 = base_deriv(shift_);
        if (kind_ == FluxKind::linear) {
            c.lipschitz = std::abs(param_ + linear_term_);
            c.monotone_sign = 0;
        } else {
            c.lipschitz = std::max(std::abs(d0 + linear_term_), std::abs(linear_term_));
            c.monotone_sign = d0 > 0.0 ? +1 : (d0 < 0.0 ? -1 : 0);
        }
    } else {
        int sign = 0;
        bool pos = false, neg = false;
        for (double s : tab_slope_) {
            double rel = s + linear_term_ - c.cphi;
            if (rel > 1e-14) pos = true;
            if (rel < -1e-14) neg = true;
        }
        sign = pos && !neg ? +1 : (neg && !pos ? -1 : 0);
        c.monotone_sign = sign;
    }
    constants_ = c;
}

bool Flux::sublinear_part_bounded() const { return std::isfinite(constants_.gamma); }

std::optional<double> Flux::curvature_weight(double u) const {
    if (!constants_.h2) return std::nullopt;
    if (u < 0.0) u = 0.0;
    switch (kind_) {
        case FluxKind::power:
            return std::abs(constants_.h2->h) * std::pow(1.0 + shift_ + u, param_);
        case FluxKind::exponential:
            return std::exp(-param_ * (shift_ + u));
        case FluxKind::logarithmic:
            return 1.0;
        case FluxKind::loglog:
            return constants_.h2->k;  // H = 0
        default: {
            auto [h, k] = *constants_.h2;
            return h * (value(u) - constants_.cphi * u) + k;
        }
    }
}

Flux Flux::shifted(double k) const {
    if (k < 0.0) throw std::invalid_argument("Flux::shifted: need k >= 0");
    if (kind_ == FluxKind::tabulated)
        throw std::invalid_argument("Flux::shifted: unsupported for tabulated fluxes");
    Flux f = *this;
    f.shift_ += k;
    f.finalize();
    return f;
}

Flux Flux::with_linear_term(double add) const {
    Flux f = *this;
    f.linear_term_ += add;
    f.finalize();
    return f;
}

Flux Flux::sublinear_part() const {
    Flux f = *this;
    if (kind_ == FluxKind::linear) {
        f.param_ = 0.0;
        f.linear_term_ = 0.0;
    } else if (kind_ == FluxKind::tabulated) {
        double slope = f.tab_slope_.back() + f.linear_term_;
        for (size_t i = 0; i < f.tab_u_.size(); ++i) f.tab_phi_[i] -= slope * f.tab_u_[i];
        f.tab_slope_ = pchip_slopes(f.tab_u_, f.tab_phi_);
        f.linear_term_ = 0.0;
    } else {
        f.linear_term_ = 0.0;
    }
    f.finalize();
    return f;
}

std::optional<double> Flux::critical_point() const {
    double d0 = deriv(0.0), dmax = deriv(u_max_);
    if (d0 == 0.0) return 0.0;
    if (d0 > 0.0 && dmax >= 0.0) return std::nullopt;
    if (d0 < 0.0 && dmax <= 0.0) return std::nullopt;
    return bisect([this](double u) { return deriv(u); }, 0.0, u_max_, 1e-12);
}

std::string Flux::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case FluxKind::power: os << "power(p=" << param_ << ")"; break;
        case FluxKind::exponential: os << "exponential(alpha=" << param_ << ")"; break;
        case FluxKind::logarithmic: os << "logarithmic"; break;
        case FluxKind::loglog: os << "loglog"; break;
        case FluxKind::linear: os << "linear(c=" << param_ << ")"; break;
        case FluxKind::tabulated: os << "tabulated[" << tab_u_.size() << "]"; break;
    }
    if (shift_ != 0.0) os << " shifted(k=" << shift_ << ")";
    if (linear_term_ != 0.0) os << " + " << linear_term_ << "*u";
    return os.str();
}

std::vector<double> log_sample_grid(double hi, int n) {
    std::vector<double> g;
    g.reserve(n);
    g.push_back(0.0);
    double lo = 1e-6;
    for (int i = 0; i + 1 < n; ++i) {
        double t = static_cast<double>(i) / (n - 2);
        g.push_back(lo * std::pow(hi / lo, t));
    }
    return g;
}

HypothesisReport check_hypotheses(const Flux& flux, std::span<const double> samples,
                                  std::optional<double> shift_k) {
    if (samples.empty())
        throw std::invalid_argument("check_hypotheses: empty sample grid");
    HypothesisReport rep;

    // H1: phi(0) = 0, |phi'| <= M, |phi| <= M u, finite C_phi.
    {
        HypothesisResult r{"h1", true, 0.0, 0.0};
        double m = flux.lipschitz();
        double worst = std::abs(flux.value(0.0));
        for (double u : samples) {
            double margin = std::abs(flux.deriv(u)) - m;
            double margin2 = u > 0 ? std::abs(flux.value(u)) - m * u : 0.0;
            double defect = std::max(margin, margin2);
            if (defect > worst) {
                worst = defect;
                r.worst_at = u;
            }
        }
        r.worst_margin = worst;
        r.holds = worst <= 1e-9 * std::max(1.0, m);
        rep.h1 = r;
    }

    auto run_h2 = [&](const Flux& f, const char* name) {
        HypothesisResult r{name, false, -kInf, 0.0, 0.0};
        if (!f.h2_params()) {
            r.worst_margin = kInf;
            r.worst_abs = kInf;
            return r;
        }
        auto [h, k] = *f.h2_params();
        bool strict = true;
        for (double u : samples) {
            if (u > f.u_max()) break;
            double w = f.curvature_weight(u).value_or(h * (f.value(u) - f.linear_rate() * u) + k);
            double d1 = f.deriv(u) - f.linear_rate();
            double d2 = f.deriv2(u);
            double prod = d2 * w;
            double sq = d1 * d1;
            if (sq == 0.0 && prod == 0.0) continue;  // beyond floating range
            if (sq == 0.0) strict = false;
            double d = (prod + sq) / std::max(sq, 1e-300);
            if (d > r.worst_margin) {
                r.worst_margin = d;
                r.worst_at = u;
            }
            r.worst_abs = std::max(r.worst_abs, std::abs(d));
        }
        r.holds = strict && r.worst_margin <= 1e-9;
        return r;
    };

    rep.h2 = run_h2(flux.sublinear_part(), "h2");
    rep.h2_prime = run_h2(flux, "h2'");
    if (shift_k) rep.h2_shift = run_h2(flux.shifted(*shift_k).sublinear_part(), "h2,k");

    // H3: H*phi + K <= L (1+u) phi' -- smallest feasible L over the samples.
    if (flux.h2_params()) {
        auto [h, k] = *flux.h2_params();
        Flux sub = flux.sublinear_part();
        double l = 0.0, l_tail_start = 0.0;
        bool feasible = true;
        size_t tail_begin = samples.size() > 8 ? samples.size() - samples.size() / 8 : 0;
        for (size_t i = 0; i < samples.size(); ++i) {
            double u = samples[i];
            double denom = (1.0 + u) * sub.deriv(u);
            double numer = h * sub.value(u) + k;
            if (denom <= 0.0) {
                feasible = false;
                break;
            }
            double need = numer / denom;
            l = std::max(l, need);
            if (i == tail_begin) l_tail_start = l;
        }
        rep.h3_feasible = feasible;
        rep.h3_smallest_l = l;
        rep.h3_tail_growing = feasible && l > l_tail_start * (1.0 + 1e-9) && l_tail_start > 0.0;
    }
    return rep;
}

BlowupProfile::BlowupProfile(const Flux& flux) : flux_(flux.sublinear_part()) {
    if (!flux_.h2_params())
        throw std::invalid_argument("BlowupProfile: flux has no (H, K) pair");
    hk_ = *flux_.h2_params();
    switch (flux_.kind()) {
        case FluxKind::power: {
            double p = flux_.param(), k = flux_.shift();
            closed_form_ = true;
            psi_inf_ = std::abs(p) * std::pow(1.0 + k, p - 1.0);
            break;
        }
        case FluxKind::exponential: {
            double a = flux_.param(), k = flux_.shift();
            closed_form_ = true;
            psi_inf_ = a * std::exp(-a * k);
            break;
        }
        case FluxKind::logarithmic:
            closed_form_ = true;
            psi_inf_ = 1.0 / (1.0 + flux_.shift());
            break;
        default:
            closed_form_ = false;
            psi_inf_ = psi_by_quadrature(flux_.u_max());
            break;
    }
}

double BlowupProfile::g(double u) const {
    double d = flux_.deriv(u);
    if (d == 0.0) throw std::runtime_error("BlowupProfile: phi' vanishes");
    return (hk_.h * flux_.value(u) + hk_.k) / d;
}

double BlowupProfile::psi(double y) const {
    if (y <= 0.0) return 0.0;
    switch (flux_.kind()) {
        case FluxKind::power: {
            double p = flux_.param(), k = flux_.shift();
            return std::abs(p) *
                   (std::pow(1.0 + k, p - 1.0) - std::pow(1.0 + k + y, p - 1.0));
        }
        case FluxKind::exponential: {
            double a = flux_.param(), k = flux_.shift();
            return a * std::exp(-a * k) * (1.0 - std::exp(-a * y));
        }
        case FluxKind::logarithmic: {
            double k = flux_.shift();
            return 1.0 / (1.0 + k) - 1.0 / (1.0 + k + y);
        }
        default:
            return psi_by_quadrature(y);
    }
}

double BlowupProfile::psi_by_quadrature(double y) const {
    if (y <= 0.0) return 0.0;
    auto integrand = [this](double u) {
        double d = flux_.deriv(u);
        double denom = hk_.h * flux_.value(u) + hk_.k;
        if (denom == 0.0) throw std::runtime_error("BlowupProfile: H*phi + K vanishes");
        return d * d / denom;
    };
    return integrate(integrand, 0.0, y, 1e-14, 1e-12);
}

double BlowupProfile::psi_inverse(double z) const {
    if (z <= 0.0) return 0.0;
    if (z >= psi_inf_) return kInf;
    double hi = 1.0;
    while (psi(hi) < z && hi < 1e14) hi *= 2.0;
    return bisect([this, z](double y) { return psi(y) - z; }, 0.0, hi, 1e-13);
}

}  // namespace conslaw
