#include "treasure/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace treasure {

namespace {

Estimate finalize(double sum, double sum_sq, long long n) {
    Estimate e;
    e.mean = sum / n;
    if (n > 1) {
        const double var = std::max(sum_sq - n * e.mean * e.mean, 0.0) / (n - 1);
        e.stderr_ = std::sqrt(var / n);
    }
    return e;
}

}  // namespace

SimulationReport simulate(const GameConfig& config, const Profile& profile, long long trials,
                          uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("simulate: need at least one trial");
    if (profile.size() != config.players)
        throw std::invalid_argument("simulate: profile size disagrees with the config");
    if (profile.box_count() != config.f.box_count())
        throw std::invalid_argument("simulate: profile box count disagrees with the prior");
    if (profile.round_count() != config.rounds)
        throw std::invalid_argument("simulate: profile round count disagrees with the config");

    const int k = profile.size();
    const int rounds = profile.round_count();
    std::vector<StrategyDecomposition> decomposed;
    decomposed.reserve(k);
    for (const auto& player : profile.players()) decomposed.push_back(birkhoff_decompose(player));

    double success_sum = 0.0, success_sq = 0.0;
    std::vector<double> reward_sum(k, 0.0), reward_sq(k, 0.0);
    std::vector<int> found_round(k);

    for (long long trial = 0; trial < trials; ++trial) {
        // Stream 0 places the treasure, stream i drives player i.
        Rng nature = Rng::stream(seed, static_cast<uint64_t>(trial), 0);
        double u = nature.uniform();
        int target = config.f.box_count() - 1;
        for (int x = 0; x < config.f.box_count(); ++x) {
            u -= config.f.prob(x);
            if (u < 0.0) {
                target = x;
                break;
            }
        }

        int best_round = rounds;  // first round anyone opens the target
        int winners = 0;
        for (int i = 0; i < k; ++i) {
            Rng stream = Rng::stream(seed, static_cast<uint64_t>(trial), static_cast<uint64_t>(i) + 1);
            const PartialPermutation& plan = sample_execution(decomposed[i], stream);
            int when = rounds;
            for (int t = 0; t < rounds; ++t) {
                if (plan.box_of_round[t] == target) {
                    when = t;
                    break;
                }
            }
            found_round[i] = when;
            if (when < best_round) {
                best_round = when;
                winners = 1;
            } else if (when == best_round && when < rounds) {
                ++winners;
            }
        }

        const double found = best_round < rounds ? 1.0 : 0.0;
        success_sum += found;
        success_sq += found;
        if (winners > 0) {
            const double reward = config.policy.reward(winners);
            for (int i = 0; i < k; ++i) {
                if (found_round[i] == best_round) {
                    reward_sum[i] += reward;
                    reward_sq[i] += reward * reward;
                }
            }
        }
    }

    SimulationReport report;
    report.trials = trials;
    report.seed = seed;
    report.success = finalize(success_sum, success_sq, trials);
    report.player_utility.reserve(k);
    for (int i = 0; i < k; ++i)
        report.player_utility.push_back(finalize(reward_sum[i], reward_sq[i], trials));
    return report;
}

}  // namespace treasure
