#pragma once

#include <cmath>
#include <stdexcept>

namespace conslaw {

/// Uniform 1D cell grid. Cell i covers [x_min + i*dx, x_min + (i+1)*dx),
/// faces are indexed 0..n_cells.
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 1;

    Grid() = default;
    Grid(double lo, double hi, int n) : x_min(lo), x_max(hi), n_cells(n) {
        if (!(hi > lo) || n <= 0)
            throw std::invalid_argument("Grid: need x_max > x_min and n_cells > 0");
    }

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }
    double face(int j) const { return x_min + j * dx(); }

    int cell_of(double x) const {
        int i = static_cast<int>(std::floor((x - x_min) / dx()));
        if (i < 0) i = 0;
        if (i >= n_cells) i = n_cells - 1;
        return i;
    }

    /// Index of the face nearest to x.
    int face_of(double x) const {
        int j = static_cast<int>(std::lround((x - x_min) / dx()));
        if (j < 0) j = 0;
        if (j > n_cells) j = n_cells;
        return j;
    }

    bool contains(double x) const { return x >= x_min && x <= x_max; }

    bool operator==(const Grid& o) const {
        return x_min == o.x_min && x_max == o.x_max && n_cells == o.n_cells;
    }
};

}  // namespace conslaw
