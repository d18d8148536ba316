#pragma once

#include <vector>

#include "treasure/matrix.hpp"

namespace treasure {

struct Assignment {
    std::vector<int> col_of_row;  // -1 where the row stays unmatched
    double total = 0.0;
};

/// Exact maximum-weight bipartite matching on a rectangular weight matrix.
/// Rows and columns may stay unmatched; cells with non-positive weight are
/// never part of the result. Augmenting-path algorithm with dual potentials,
/// deterministic scan order. Throws on negative weights.
Assignment max_weight_assignment(const Grid& weights);

}  // namespace treasure
