#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace treasure {

// Dense row-major matrix of doubles. Small helper used for strategy entries,
// value fields and assignment weights; not a linear-algebra type.
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {
        if (r < 0 || c < 0) throw std::invalid_argument("Grid: negative dimensions");
    }

    double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    bool same_shape(const Grid& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

}  // namespace treasure
