#pragma once

#include <vector>

#include "treasure/game.hpp"
#include "treasure/rng.hpp"

namespace treasure {

/// Deterministic plan: at most one box per round, no box twice. Entry -1
/// means the round opens nothing new.
struct PartialPermutation {
    int boxes = 0;
    std::vector<int> box_of_round;

    int rounds() const { return static_cast<int>(box_of_round.size()); }
};

struct DecompositionTerm {
    double weight = 0.0;
    PartialPermutation plan;
};

/// Convex combination of deterministic plans reproducing a strategy matrix;
/// the executable form of a strategy.
struct StrategyDecomposition {
    int boxes = 0;
    int rounds = 0;
    std::vector<DecompositionTerm> terms;
};

/// Generalized Birkhoff decomposition of a substochastic strategy matrix.
/// The matrix is embedded into an (M+T)-square doubly-stochastic one (slack
/// rows/columns absorb the missing mass, the slack block is completed
/// sparsely), then perfect matchings are peeled off, subtracting the minimum
/// matched entry each time. Guarantees:
///   - weights sum to 1 within 1e-9,
///   - the weighted plans reproduce the matrix entrywise within 1e-9,
///   - at most 4 * (positive entries) + M + T terms.
/// Throws std::runtime_error if a positive residual loses bipartite support
/// (which would mean the arithmetic corrupted the embedding).
StrategyDecomposition birkhoff_decompose(const StrategyMatrix& a);

/// Weighted draw of one plan; the returned vector maps rounds to boxes
/// (-1 where the plan opens nothing).
const PartialPermutation& sample_execution(const StrategyDecomposition& d, Rng& rng);

/// Sum of weight * plan-matrix, for verifying reconstruction.
Grid decomposition_matrix(const StrategyDecomposition& d);

}  // namespace treasure
