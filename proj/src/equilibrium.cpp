#include "treasure/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treasure/assignment.hpp"

namespace treasure {

namespace {

double dot(const StrategyMatrix& b, const Grid& values) {
    double sum = 0.0;
    for (int x = 0; x < b.box_count(); ++x)
        for (int t = 0; t < b.round_count(); ++t) sum += b.at(x, t) * values.at(x, t);
    return sum;
}

PlayerAudit audit_player(const GameConfig& config, const Profile& profile, int i) {
    const Profile others = profile.without(i);
    const Grid values = value_grid(config, others);
    PlayerAudit audit;
    audit.own_utility = dot(profile.player(i), values);
    audit.best_utility = best_response(values).utility;
    if (audit.own_utility > 0.0)
        audit.ratio = audit.best_utility / audit.own_utility;
    else if (audit.best_utility > kStructuralTol)
        audit.ratio = std::numeric_limits<double>::infinity();
    else
        audit.ratio = 1.0;
    return audit;
}

GameConfig config_for(const GameConfig& config, int players) {
    return GameConfig(config.f, config.policy.extended(players), config.rounds, players);
}

}  // namespace

BestResponse best_response(const Grid& values) {
    const Assignment match = max_weight_assignment(values);
    Grid entries(values.rows, values.cols);
    for (int x = 0; x < values.rows; ++x)
        if (match.col_of_row[x] >= 0) entries.at(x, match.col_of_row[x]) = 1.0;
    return {StrategyMatrix::from_grid(std::move(entries)), match.total};
}

EquilibriumCertificate certify(const GameConfig& config, const Profile& profile,
                               double tolerance) {
    if (profile.size() != config.players)
        throw std::invalid_argument("certify: profile size disagrees with the config");
    if (profile.box_count() != config.f.box_count())
        throw std::invalid_argument("certify: profile box count disagrees with the prior");
    if (profile.round_count() != config.rounds)
        throw std::invalid_argument("certify: profile round count disagrees with the config");
    EquilibriumCertificate cert;
    cert.tolerance = tolerance;
    cert.players.reserve(profile.size());
    // In a symmetric profile every seat sees the same opponents; one audit
    // covers them all.
    if (profile.size() > 1 && profile.is_symmetric()) {
        const PlayerAudit audit = audit_player(config, profile, 0);
        cert.players.assign(profile.size(), audit);
    } else {
        for (int i = 0; i < profile.size(); ++i)
            cert.players.push_back(audit_player(config, profile, i));
    }
    cert.ratio = 1.0;
    for (const auto& audit : cert.players) cert.ratio = std::max(cert.ratio, audit.ratio);
    cert.equilibrium = cert.ratio <= 1.0 + tolerance;
    return cert;
}

PoAReport poa_metrics(const GameConfig& config, const Profile& profile) {
    if (profile.round_count() != config.rounds)
        throw std::invalid_argument("poa_metrics: profile round count disagrees with the config");
    PoAReport report;
    report.optimal_success = optimal_success(config.f, config.players, config.rounds);
    report.profile_success = success_probability(config.f, profile);
    if (report.profile_success <= 0.0)
        throw std::invalid_argument("poa_metrics: profile has zero success probability");
    report.ratio = report.optimal_success / report.profile_success;
    const double k = config.players;
    report.exclusive_bound = 1.0 / (1.0 - std::pow(1.0 - 1.0 / k, k));
    report.certificate_ratio = certify(config, profile, 1e-6).ratio;
    return report;
}

EquilibriumCertificate robustness_eval(const GameConfig& config, const StrategyMatrix& strategy,
                                       int extra, const CongestionPolicy* table_extension) {
    if (extra < 0) throw std::invalid_argument("robustness_eval: extra players must be >= 0");
    if (strategy.round_count() != config.rounds)
        throw std::invalid_argument("robustness_eval: strategy round count disagrees with the config");
    const int crowd = config.players + extra;
    CongestionPolicy policy = table_extension != nullptr
                                  ? *table_extension
                                  : config.policy.extended(crowd);
    if (policy.size() != crowd)
        throw std::invalid_argument("robustness_eval: extension length must cover all players");
    const GameConfig crowded(config.f, std::move(policy), config.rounds, crowd);
    return certify(crowded, Profile::symmetric(strategy, crowd), kStructuralTol);
}

// --- Pure-profile enumeration ------------------------------------------------

namespace {

// All distinct first-visit plans a pure strategy can induce: round 0 always
// opens a box, later rounds open an unvisited box or re-open an old one.
void enumerate_plans(int boxes, int rounds, int round, std::vector<int>& plan,
                     std::vector<bool>& used, std::vector<PureStrategyPlan>& out) {
    if (round == rounds) {
        out.push_back(plan);
        return;
    }
    if (round > 0) {
        plan[round] = -1;
        enumerate_plans(boxes, rounds, round + 1, plan, used, out);
    }
    for (int x = 0; x < boxes; ++x) {
        if (used[x]) continue;
        used[x] = true;
        plan[round] = x;
        enumerate_plans(boxes, rounds, round + 1, plan, used, out);
        used[x] = false;
    }
    plan[round] = -1;
}

StrategyMatrix plan_matrix(const PureStrategyPlan& plan, int boxes) {
    Grid entries(boxes, static_cast<int>(plan.size()));
    for (size_t t = 0; t < plan.size(); ++t)
        if (plan[t] >= 0) entries.at(plan[t], static_cast<int>(t)) = 1.0;
    return StrategyMatrix::from_grid(std::move(entries));
}

}  // namespace

PureSearchResult pure_equilibrium_search(const GameConfig& config, double enumeration_cap) {
    const int boxes = config.f.box_count();
    const int rounds = config.rounds;
    const int k = config.players;
    const double raw_size = std::pow(static_cast<double>(boxes),
                                     static_cast<double>(k) * rounds);
    if (raw_size > enumeration_cap)
        throw std::invalid_argument("pure_equilibrium_search: instance too large to enumerate");

    std::vector<PureStrategyPlan> plans;
    {
        std::vector<int> plan(rounds, -1);
        std::vector<bool> used(boxes, false);
        enumerate_plans(boxes, rounds, 0, plan, used, plans);
    }
    std::vector<StrategyMatrix> matrices;
    matrices.reserve(plans.size());
    for (const auto& plan : plans) matrices.push_back(plan_matrix(plan, boxes));

    PureSearchResult result;
    const int p = static_cast<int>(plans.size());
    // Profiles are multisets of plans (player identities are exchangeable);
    // deviations are still evaluated per concrete seat.
    std::vector<int> choice(k, 0);
    while (true) {
        std::vector<StrategyMatrix> seats;
        seats.reserve(k);
        for (int i = 0; i < k; ++i) seats.push_back(matrices[choice[i]]);
        const Profile profile(std::move(seats));
        ++result.profiles_checked;

        bool stable = true;
        for (int i = 0; i < k && stable; ++i) {
            if (i > 0 && choice[i] == choice[i - 1]) continue;  // same seat already audited
            const Grid values = value_grid(config, profile.without(i));
            const double own = dot(profile.player(i), values);
            if (best_response(values).utility > own + kStructuralTol) stable = false;
        }
        if (stable) {
            std::vector<PureStrategyPlan> found;
            found.reserve(k);
            for (int i = 0; i < k; ++i) found.push_back(plans[choice[i]]);
            result.equilibria.push_back(std::move(found));
        }

        // next non-decreasing index tuple
        int pos = k - 1;
        while (pos >= 0 && choice[pos] == p - 1) --pos;
        if (pos < 0) break;
        const int next = choice[pos] + 1;
        for (int i = pos; i < k; ++i) choice[i] = next;
    }
    return result;
}

bool nash_dominates_symmetric_check(const GameConfig& config, const Profile& nash_profile,
                                    const StrategyMatrix& symmetric) {
    if (config.policy.kind() != PolicyKind::exclusive)
        throw std::invalid_argument(
            "nash_dominates_symmetric_check: only meaningful for the exclusive policy");
    const double nash = success_probability(config.f, nash_profile);
    const double sym =
        success_probability(config.f, Profile::symmetric(symmetric, config.players));
    return nash + kStructuralTol >= sym;
}

ScalabilityProbe scalability_probe(const GameConfig& config, const Profile& base,
                                   const Profile& extended) {
    if (extended.size() < base.size())
        throw std::invalid_argument("scalability_probe: extension smaller than the base profile");
    for (int i = 0; i < base.size(); ++i)
        if (!base.player(i).same_entries(extended.player(i)))
            throw std::invalid_argument("scalability_probe: base profile is not a prefix of the extension");

    const GameConfig small = config_for(config, base.size());
    const GameConfig large = config_for(config, extended.size());

    ScalabilityProbe probe;
    probe.individual_non_increasing = true;
    for (int i = 0; i < base.size(); ++i) {
        const double before = utility(small, base.without(i), base.player(i));
        const double after = utility(large, extended.without(i), extended.player(i));
        probe.social_base += before;
        if (after > before + kStructuralTol) probe.individual_non_increasing = false;
    }
    for (int i = 0; i < extended.size(); ++i)
        probe.social_extended += utility(large, extended.without(i), extended.player(i));
    probe.social_non_decreasing = probe.social_extended + kStructuralTol >= probe.social_base;
    return probe;
}

}  // namespace treasure
