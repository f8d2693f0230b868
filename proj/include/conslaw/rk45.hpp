#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conslaw {

/// Table of accepted steps of a scalar ODE y' = f(t, y) with cubic Hermite
/// dense output between nodes.
struct OdeTable {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> dy;  // f at the nodes
    bool complete = false;
    std::string message;

    double t_front() const { return t.front(); }
    double t_back() const { return t.back(); }

    bool covers(double s) const {
        return complete ? (s >= t.front() && s <= t.back() + 1e-14)
                        : (s >= t.front() && s <= t.back());
    }

    double value(double s) const { return hermite(s, false); }
    double slope(double s) const { return hermite(s, true); }

private:
    double hermite(double s, bool want_slope) const {
        if (t.size() == 1 || s <= t.front())
            return want_slope ? dy.front() : y.front();
        if (s >= t.back()) return want_slope ? dy.back() : y.back();
        size_t hi = 1;
        while (t[hi] < s) ++hi;
        size_t lo = hi - 1;
        double h = t[hi] - t[lo];
        double x = (s - t[lo]) / h;
        double y0 = y[lo], y1 = y[hi], m0 = dy[lo] * h, m1 = dy[hi] * h;
        if (!want_slope) {
            double x2 = x * x, x3 = x2 * x;
            return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * m0 +
                   (-2 * x3 + 3 * x2) * y1 + (x3 - x2) * m1;
        }
        double x2 = x * x;
        return ((6 * x2 - 6 * x) * y0 + (3 * x2 - 4 * x + 1) * m0 +
                (-6 * x2 + 6 * x) * y1 + (3 * x2 - 2 * x) * m1) / h;
    }
};

/// Dormand-Prince 5(4) with PI-free elementary step control. Scalar state is
/// all the shock tracking needs.
inline OdeTable integrate_rk45(const std::function<double(double, double)>& f,
                               double t0, double y0, double t1,
                               double rel_tol = 1e-9, double abs_tol = 1e-12,
                               double h_init = 0.0, double h_min = 1e-14) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeTable table;
    double t = t0, y = y0;
    double k1 = f(t, y);
    table.t.push_back(t);
    table.y.push_back(y);
    table.dy.push_back(k1);

    double h = h_init > 0 ? h_init : (t1 - t0) * 1e-4;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        double k2 = f(t + c2 * h, y + h * a21 * k1);
        double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        double k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        double k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        double y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        double k7 = f(t + h, y_new);
        double err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale = abs_tol + rel_tol * std::max(std::abs(y), std::abs(y_new));
        double ratio = std::abs(err) / scale;
        if (!std::isfinite(y_new) || !std::isfinite(err)) ratio = 1e6;

        if (ratio <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            table.t.push_back(t);
            table.y.push_back(y);
            table.dy.push_back(k1);
        }
        double factor = ratio > 0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < h_min) {
            table.message = "step size underflow at t=" + std::to_string(t);
            return table;  // partial table, complete stays false
        }
    }
    table.complete = true;
    return table;
}

}  // namespace conslaw
