#pragma once

#include <vector>

#include "treasure/game.hpp"

namespace treasure {

struct BestResponse {
    StrategyMatrix strategy;
    double utility = 0.0;
};

/// Exact best response against a fixed value field: the utility of any
/// strategy is linear in its entries, so the optimum over substochastic
/// matrices is attained at a deterministic plan, found here as an exact
/// maximum-weight matching of boxes to rounds.
BestResponse best_response(const Grid& values);

struct PlayerAudit {
    double own_utility = 0.0;
    double best_utility = 0.0;
    double ratio = 1.0;  // +infinity when own utility is 0 but a gain exists
};

struct EquilibriumCertificate {
    std::vector<PlayerAudit> players;
    double ratio = 1.0;  // worst ratio across players
    double tolerance = 0.0;
    bool equilibrium = false;  // ratio <= 1 + tolerance
};

/// Runs the best-response oracle for every player and reports how much any
/// of them could gain by deviating.
EquilibriumCertificate certify(const GameConfig& config, const Profile& profile,
                               double tolerance);

struct PoAReport {
    double optimal_success = 0.0;
    double profile_success = 0.0;
    double ratio = 1.0;
    double exclusive_bound = 0.0;  // (1 - (1 - 1/k)^k)^(-1)
    double certificate_ratio = 1.0;
};

/// Optimal coordinated success over the success of the supplied profile.
/// The profile is expected to be an equilibrium; its measured certificate
/// ratio is recorded in the report. Throws if the profile never succeeds.
PoAReport poa_metrics(const GameConfig& config, const Profile& profile);

/// Re-certifies k + extra copies of a strategy built for k players. Kind
/// policies grow by their closed form; table policies need explicit rewards
/// of length k + extra.
EquilibriumCertificate robustness_eval(const GameConfig& config, const StrategyMatrix& strategy,
                                       int extra, const CongestionPolicy* table_extension = nullptr);

/// Deterministic plan for the pure-strategy enumeration: box opened per
/// round, -1 when the round re-opens an old box (no new visit).
using PureStrategyPlan = std::vector<int>;

struct PureSearchResult {
    long long profiles_checked = 0;
    std::vector<std::vector<PureStrategyPlan>> equilibria;
};

/// Enumerates all pure profiles (up to player relabeling) and keeps those
/// where no player has a profitable deviation; deviations are checked with
/// the exact best-response oracle, which by linearity dominates every pure
/// deviation. Refuses instances with M^(k T) beyond the cap.
PureSearchResult pure_equilibrium_search(const GameConfig& config,
                                         double enumeration_cap = 1e7);

/// Cross-check harness, exclusive policy only: an equilibrium profile
/// must succeed at least as well as any symmetric profile.
bool nash_dominates_symmetric_check(const GameConfig& config, const Profile& nash_profile,
                                    const StrategyMatrix& symmetric);

struct ScalabilityProbe {
    bool social_non_decreasing = false;    // sum of utilities grew (or held)
    bool individual_non_increasing = false;  // every original player weakly lost
    double social_base = 0.0;
    double social_extended = 0.0;
};

/// Checks the two monotone-scalability properties on a profile and an
/// extension of it (the base profile must be a prefix of the extended one).
ScalabilityProbe scalability_probe(const GameConfig& config, const Profile& base,
                                   const Profile& extended);

}  // namespace treasure
