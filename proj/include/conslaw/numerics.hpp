#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace conslaw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier compensated sum. One pass, robust against cancellation.
inline double compensated_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

/// Bisection for a continuous f with f(a)*f(b) <= 0. Throws if the bracket
/// has no sign change.
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double xtol = 1e-12, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::runtime_error("bisect: no sign change in bracket");
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GkEstimate {
    double value;
    double error;
};

inline GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = h * kKronrodNodes[i];
        double fs = f(c - x) + f(c + x);
        kron += kKronrodWeights[i] * fs;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fs;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, double rel_tol = 1e-10,
                        int max_depth = 48) {
    if (a == b) return 0.0;
    struct Piece {
        double a, b, value, error;
        int depth;
    };
    auto est = detail::gk15(f, a, b);
    std::vector<Piece> stack{{a, b, est.value, est.error, 0}};
    double total = 0.0;
    double budget = std::max(abs_tol, rel_tol * std::abs(est.value));
    while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        if (p.error <= budget * std::max(1e-3, (p.b - p.a) / std::abs(b - a)) ||
            p.depth >= max_depth) {
            total += p.value;
            continue;
        }
        double m = 0.5 * (p.a + p.b);
        auto left = detail::gk15(f, p.a, m);
        auto right = detail::gk15(f, m, p.b);
        stack.push_back({p.a, m, left.value, left.error, p.depth + 1});
        stack.push_back({m, p.b, right.value, right.error, p.depth + 1});
    }
    return total;
}

/// Quadrature with interior breakpoints (integrand kinks / jumps).
inline double integrate_pieces(const std::function<double(double)>& f, double a,
                               double b, std::vector<double> breaks,
                               double abs_tol = 1e-12, double rel_tol = 1e-10) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = std::max(a, breaks[i]);
        double hi = std::min(b, breaks[i + 1]);
        if (hi > lo) total += integrate(f, lo, hi, abs_tol, rel_tol);
    }
    return total;
}

/// Deterministic uniform doubles in [0, 1). mt19937_64 raw draws only, so a
/// fixed seed gives the same sequence on every platform.
class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    double next() {
        // splitmix64 step; 53 mantissa bits.
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::uint64_t state_;
};

}  // namespace conslaw
