#include "treasure/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treasure {

namespace {

constexpr double kSupportTol = 1e-14;   // entries below this count as zero
constexpr double kResidualTol = 1e-12;  // total mass left when we stop peeling

// Kuhn's augmenting-path matching on the positive support of a square matrix.
// The matching is kept across peeling steps: when an entry is zeroed, only its
// row needs re-augmenting.
struct SupportMatcher {
    const Grid& m;
    std::vector<int> row_of_col;
    std::vector<bool> visited;

    explicit SupportMatcher(const Grid& grid) : m(grid), row_of_col(grid.cols, -1) {}

    bool augment(int row) {
        for (int c = 0; c < m.cols; ++c) {
            if (visited[c] || m.at(row, c) <= kSupportTol) continue;
            visited[c] = true;
            if (row_of_col[c] < 0 || augment(row_of_col[c])) {
                row_of_col[c] = row;
                return true;
            }
        }
        return false;
    }

    bool rematch(int row) {
        visited.assign(m.cols, false);
        return augment(row);
    }

    bool run() {
        for (int r = 0; r < m.rows; ++r)
            if (!rematch(r)) return false;
        return true;
    }
};

}  // namespace

StrategyDecomposition birkhoff_decompose(const StrategyMatrix& a) {
    const int boxes = a.box_count();
    const int rounds = a.round_count();
    const int n = boxes + rounds;

    // Doubly-stochastic embedding. Box rows keep their strategy entries and
    // park unused row mass on a diagonal slack column; slack rows mirror the
    // unused column mass. The slack-by-slack corner is completed with a
    // northwest-corner transportation fill, which stays sparse (at most
    // M + T - 1 entries).
    Grid d(n, n, 0.0);
    int positives = 0;
    std::vector<double> row_need(rounds), col_need(boxes);
    for (int x = 0; x < boxes; ++x) {
        for (int t = 0; t < rounds; ++t) {
            d.at(x, t) = a.at(x, t);
            if (a.at(x, t) > kSupportTol) ++positives;
        }
        d.at(x, rounds + x) = std::max(1.0 - a.row_sum(x), 0.0);
        col_need[x] = a.row_sum(x);
    }
    for (int t = 0; t < rounds; ++t) {
        d.at(boxes + t, t) = std::max(1.0 - a.col_sum(t), 0.0);
        row_need[t] = a.col_sum(t);
    }
    {
        int i = 0, j = 0;
        while (i < rounds && j < boxes) {
            const double step = std::min(row_need[i], col_need[j]);
            if (step > 0.0) {
                d.at(boxes + i, rounds + j) = step;
                row_need[i] -= step;
                col_need[j] -= step;
            }
            if (row_need[i] <= kSupportTol)
                ++i;
            else
                ++j;
        }
    }

    StrategyDecomposition result;
    result.boxes = boxes;
    result.rounds = rounds;
    const int max_terms = 4 * positives + boxes + rounds;

    SupportMatcher matcher(d);
    if (!matcher.run())
        throw std::runtime_error(
            "birkhoff_decompose: no perfect matching on the embedding (numeric corruption)");
    double residual = 1.0;
    while (residual > kResidualTol) {
        if (static_cast<int>(result.terms.size()) >= max_terms)
            throw std::runtime_error(
                "birkhoff_decompose: term budget exceeded (numeric corruption)");
        double weight = residual;
        for (int c = 0; c < n; ++c) weight = std::min(weight, d.at(matcher.row_of_col[c], c));
        DecompositionTerm term;
        term.weight = weight;
        term.plan.boxes = boxes;
        term.plan.box_of_round.assign(rounds, -1);
        for (int c = 0; c < n; ++c) {
            const int r = matcher.row_of_col[c];
            if (r < boxes && c < rounds) term.plan.box_of_round[c] = r;
            d.at(r, c) = std::max(d.at(r, c) - weight, 0.0);
        }
        result.terms.push_back(std::move(term));
        residual -= weight;
        if (residual <= kResidualTol) break;
        // entries zeroed by the subtraction free their columns; re-augment
        // just the affected rows
        for (int c = 0; c < n; ++c) {
            const int r = matcher.row_of_col[c];
            if (r >= 0 && d.at(r, c) <= kSupportTol) {
                matcher.row_of_col[c] = -1;
                if (!matcher.rematch(r))
                    throw std::runtime_error(
                        "birkhoff_decompose: no perfect matching on a positive residual "
                        "(numeric corruption)");
            }
        }
    }
    return result;
}

const PartialPermutation& sample_execution(const StrategyDecomposition& d, Rng& rng) {
    if (d.terms.empty()) throw std::invalid_argument("sample_execution: empty decomposition");
    double u = rng.uniform();
    for (const auto& term : d.terms) {
        u -= term.weight;
        if (u < 0.0) return term.plan;
    }
    return d.terms.back().plan;
}

Grid decomposition_matrix(const StrategyDecomposition& d) {
    Grid sum(d.boxes, d.rounds, 0.0);
    for (const auto& term : d.terms)
        for (int t = 0; t < d.rounds; ++t) {
            const int x = term.plan.box_of_round[t];
            if (x >= 0) sum.at(x, t) += term.weight;
        }
    return sum;
}

}  // namespace treasure
