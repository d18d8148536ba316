// Random instance generators shared by the test suites. Everything is driven
// by an explicit Rng so failures reproduce.
#pragma once

#include <algorithm>
#include <vector>

#include "treasure/game.hpp"
#include "treasure/rng.hpp"

namespace testgen {

using namespace treasure;

inline int random_int(Rng& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

inline BoxDistribution random_f(Rng& rng, int boxes) {
    std::vector<double> v(boxes);
    double sum = 0.0;
    for (auto& x : v) {
        x = 0.05 + rng.uniform();
        sum += x;
    }
    for (auto& x : v) x /= sum;
    std::sort(v.begin(), v.end(), std::greater<>());
    return BoxDistribution(v);
}

// Mix of the two named kinds plus random tables; table entries stay at or
// below 0.95 past the first so the value function always has usable slope.
inline CongestionPolicy random_policy(Rng& rng, int k) {
    if (k == 1) return CongestionPolicy::exclusive(1);
    const double u = rng.uniform();
    if (u < 0.34) return CongestionPolicy::exclusive(k);
    if (u < 0.67) return CongestionPolicy::sharing(k);
    std::vector<double> rewards(k, 1.0);
    double level = 0.95 * rng.uniform();
    for (int l = 1; l < k; ++l) {
        rewards[l] = level;
        level *= rng.uniform();
    }
    return CongestionPolicy::table(rewards);
}

inline GameConfig random_config(Rng& rng, int k_lo, int k_hi, int m_lo, int m_hi) {
    const int k = random_int(rng, k_lo, k_hi);
    const int m = random_int(rng, m_lo, m_hi);
    const int t = random_int(rng, 1, m);
    return GameConfig(random_f(rng, m), random_policy(rng, k), t, k);
}

inline StrategyMatrix random_substochastic(Rng& rng, int boxes, int rounds) {
    Grid g(boxes, rounds);
    for (auto& v : g.data) v = rng.uniform();
    for (int x = 0; x < boxes; ++x) {
        double sum = 0.0;
        for (int t = 0; t < rounds; ++t) sum += g.at(x, t);
        const double target = rng.uniform();
        for (int t = 0; t < rounds; ++t) g.at(x, t) *= target / sum;
    }
    for (int t = 0; t < rounds; ++t) {
        double sum = 0.0;
        for (int x = 0; x < boxes; ++x) sum += g.at(x, t);
        if (sum > 1.0)
            for (int x = 0; x < boxes; ++x) g.at(x, t) /= sum;
    }
    return StrategyMatrix::from_grid(std::move(g));
}

inline Profile random_profile(Rng& rng, int players, int boxes, int rounds) {
    std::vector<StrategyMatrix> p;
    p.reserve(players);
    for (int i = 0; i < players; ++i) p.push_back(random_substochastic(rng, boxes, rounds));
    return Profile(std::move(p));
}

// A small explicit mixture of deterministic plans; its matrix is the
// weighted sum, which lets tests enumerate outcomes exactly.
struct PureMixture {
    std::vector<double> weights;
    std::vector<std::vector<int>> plans;  // round -> box, -1 = nothing new
};

inline PureMixture random_mixture(Rng& rng, int boxes, int rounds, int max_terms = 3) {
    PureMixture mix;
    const int terms = random_int(rng, 1, max_terms);
    double left = 1.0;
    for (int i = 0; i < terms; ++i) {
        const double w = (i + 1 == terms) ? left : left * rng.uniform();
        left -= w;
        std::vector<int> plan(rounds, -1);
        std::vector<bool> used(boxes, false);
        for (int t = 0; t < rounds; ++t) {
            if (rng.uniform() < 0.25) continue;  // skip the round
            const int x = random_int(rng, 0, boxes - 1);
            if (!used[x]) {
                used[x] = true;
                plan[t] = x;
            }
        }
        mix.weights.push_back(w);
        mix.plans.push_back(std::move(plan));
    }
    return mix;
}

inline StrategyMatrix mixture_matrix(const PureMixture& mix, int boxes, int rounds) {
    Grid g(boxes, rounds);
    for (size_t i = 0; i < mix.weights.size(); ++i)
        for (int t = 0; t < rounds; ++t) {
            const int x = mix.plans[i][t];
            if (x >= 0) g.at(x, t) += mix.weights[i];
        }
    return StrategyMatrix::from_grid(std::move(g));
}

}  // namespace testgen
