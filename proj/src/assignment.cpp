#include "treasure/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treasure {

namespace {

// Shortest-augmenting-path assignment on a square cost matrix (minimization),
// 1-based working arrays with row/column 0 as the virtual free slot.
// Returns for each column the row assigned to it (1-based, 0 = unmatched).
std::vector<int> min_cost_assignment(const Grid& cost) {
    const int n = cost.rows;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    return p;
}

}  // namespace

Assignment max_weight_assignment(const Grid& weights) {
    for (double w : weights.data)
        if (w < 0.0) throw std::invalid_argument("max_weight_assignment: negative weight");
    const int n = std::max(weights.rows, weights.cols);
    if (n == 0) return {};
    // Pad to square and negate; the zero padding lets rows and columns stay
    // effectively unmatched at no cost.
    Grid cost(n, n, 0.0);
    for (int r = 0; r < weights.rows; ++r)
        for (int c = 0; c < weights.cols; ++c) cost.at(r, c) = -weights.at(r, c);

    const std::vector<int> row_of_col = min_cost_assignment(cost);

    Assignment result;
    result.col_of_row.assign(weights.rows, -1);
    for (int c = 1; c <= n; ++c) {
        const int r = row_of_col[c] - 1;
        if (r < 0 || r >= weights.rows || c - 1 >= weights.cols) continue;
        if (weights.at(r, c - 1) <= 0.0) continue;  // zero-weight pairs are dropped
        result.col_of_row[r] = c - 1;
        result.total += weights.at(r, c - 1);
    }
    return result;
}

}  // namespace treasure
