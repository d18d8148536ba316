#pragma once

#include "treasure/game.hpp"

namespace treasure {

/// Slack parameters of the approximate self-greedy construction, derived from
/// a single accuracy knob theta: value_slack bounds how far supported boxes
/// may fall below the best available value, mass_slack bounds how much column
/// mass the construction may leave on the table.
struct SgreedyParams {
    double value_slack = 0.0;  // epsilon
    double mass_slack = 0.0;   // delta

    /// value_slack = theta / (2 (T+1)) * f(2) / 2^(k+1),
    /// mass_slack  = (theta/2) / (1 + theta/2), capped at 1/2.
    static SgreedyParams from_theta(const GameConfig& config, double theta);
};

/// The optimal symmetric search strategy: remaining mass on box x after round
/// t is min(1, alpha(t) * f(x)^(-1/(k-1))), with alpha(t) chosen so the total
/// remaining mass equals M - t. Maximizes the success probability among
/// symmetric profiles and is a symmetric equilibrium under the exclusive
/// policy. For a single player it degenerates to deterministically opening
/// the highest-mass boxes in order.
StrategyMatrix optimal_symmetric_strategy(const BoxDistribution& f, int k, int rounds);

/// Round t opens a uniformly random still-unopened box among the first m.
/// The resulting matrix has entry 1/m for x < m, t < min(rounds, m). Pass
/// total_boxes > m to embed the matrix in a taller box space.
StrategyMatrix uniform_strategy(int m, int rounds, int total_boxes = 0);

/// Deterministic strategy visiting the given distinct boxes (0-based) in
/// order, one per round from round 0.
StrategyMatrix pure_strategy(const std::vector<int>& visits, int boxes, int rounds);

/// Column-by-column construction of a strategy that is value_slack-self-greedy
/// and leaves at most mass_slack unassigned per column. Each column runs a
/// binary search on the marginal value w; each box inverts its value function
/// by bisection to match w.
StrategyMatrix approx_sgreedy_strategy(const GameConfig& config, const SgreedyParams& params);

/// The polynomial approximate-equilibrium constructor: picks the slacks from
/// theta and runs the self-greedy construction. The result is a symmetric
/// (1 + C(k))(1 + theta)-equilibrium.
StrategyMatrix approx_equilibrium_strategy(const GameConfig& config, double theta);

}  // namespace treasure
