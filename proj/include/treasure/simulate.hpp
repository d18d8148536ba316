#pragma once

#include <cstdint>
#include <vector>

#include "treasure/decompose.hpp"
#include "treasure/game.hpp"

namespace treasure {

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(trials)
};

struct SimulationReport {
    long long trials = 0;
    uint64_t seed = 0;
    Estimate success;
    std::vector<Estimate> player_utility;
};

/// Monte Carlo playout of the full game: per trial the treasure is placed by
/// the prior, every player samples one execution of its decomposed strategy,
/// and the earliest finders split the reward according to the policy.
/// Every (trial, player) pair draws from its own RNG stream derived from the
/// seed, so the report depends only on (config, profile, trials, seed) and
/// not on scheduling.
SimulationReport simulate(const GameConfig& config, const Profile& profile, long long trials,
                          uint64_t seed);

}  // namespace treasure
