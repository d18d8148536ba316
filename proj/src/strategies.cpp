#include "treasure/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace treasure {

namespace {

StrategyMatrix top_boxes_strategy(const BoxDistribution& f, int rounds) {
    const int visits = std::min(rounds, f.box_count());
    std::vector<int> order(visits);
    std::iota(order.begin(), order.end(), 0);
    return pure_strategy(order, f.box_count(), rounds);
}

}  // namespace

StrategyMatrix optimal_symmetric_strategy(const BoxDistribution& f, int k, int rounds) {
    if (k < 1) throw std::invalid_argument("optimal_symmetric_strategy: need at least one player");
    if (rounds < 1) throw std::invalid_argument("optimal_symmetric_strategy: need at least one round");
    if (k == 1) return top_boxes_strategy(f, rounds);

    const int boxes = f.box_count();
    const double exponent = -1.0 / (k - 1);
    std::vector<double> weight(boxes);  // f(x)^(-1/(k-1)), non-decreasing
    std::vector<double> prefix(boxes + 1, 0.0);
    for (int x = 0; x < boxes; ++x) {
        weight[x] = std::pow(f.prob(x), exponent);
        prefix[x + 1] = prefix[x] + weight[x];
    }

    Grid entries(boxes, rounds);
    std::vector<double> before(boxes, 1.0);
    const int horizon = std::min(rounds, boxes);
    for (int t = 1; t <= horizon; ++t) {
        // Largest cut W such that sum_{x<=W} (1 - weight(x)/weight(W)) < t;
        // boxes beyond the cut keep remaining mass 1 this round.
        int cut = boxes;
        while (cut > 1) {
            const double mass_gone = cut - prefix[cut] / weight[cut - 1];
            if (mass_gone < t) break;
            --cut;
        }
        const double alpha = (cut - t) / prefix[cut];
        for (int x = 0; x < boxes; ++x) {
            const double after = std::min(1.0, alpha * weight[x]);
            entries.at(x, t - 1) = std::max(before[x] - after, 0.0);
            before[x] = after;
        }
    }
    return StrategyMatrix::from_grid(std::move(entries));
}

StrategyMatrix uniform_strategy(int m, int rounds, int total_boxes) {
    if (m < 1) throw std::invalid_argument("uniform_strategy: need at least one box");
    if (rounds < 1) throw std::invalid_argument("uniform_strategy: need at least one round");
    const int boxes = std::max(m, total_boxes);
    Grid entries(boxes, rounds);
    const int horizon = std::min(rounds, m);
    for (int x = 0; x < m; ++x)
        for (int t = 0; t < horizon; ++t) entries.at(x, t) = 1.0 / m;
    return StrategyMatrix::from_grid(std::move(entries));
}

StrategyMatrix pure_strategy(const std::vector<int>& visits, int boxes, int rounds) {
    if (static_cast<int>(visits.size()) > rounds)
        throw std::invalid_argument("pure_strategy: more visits than rounds");
    Grid entries(boxes, rounds);
    std::vector<bool> seen(boxes, false);
    for (size_t t = 0; t < visits.size(); ++t) {
        const int x = visits[t];
        if (x < 0 || x >= boxes) throw std::invalid_argument("pure_strategy: box out of range");
        if (seen[x])
            throw std::invalid_argument("pure_strategy: duplicate box in visit sequence");
        seen[x] = true;
        entries.at(x, static_cast<int>(t)) = 1.0;
    }
    return StrategyMatrix::from_grid(std::move(entries));
}

SgreedyParams SgreedyParams::from_theta(const GameConfig& config, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("SgreedyParams: theta must be positive");
    const double second = config.f.prob(config.f.box_count() >= 2 ? 1 : 0);
    SgreedyParams params;
    params.value_slack = theta / (2.0 * (config.rounds + 1)) * second /
                         std::pow(2.0, config.players + 1);
    params.mass_slack = std::min(0.5, (theta / 2.0) / (1.0 + theta / 2.0));
    return params;
}

StrategyMatrix approx_sgreedy_strategy(const GameConfig& config, const SgreedyParams& params) {
    if (!(params.value_slack > 0.0) || !(params.mass_slack > 0.0) || params.mass_slack > 0.5)
        throw std::invalid_argument("approx_sgreedy_strategy: slacks must satisfy eps > 0, 0 < delta <= 1/2");
    const int boxes = config.f.box_count();
    const int rounds = config.rounds;
    const int k = config.players;

    if (boxes == 1) return StrategyMatrix::unit(1, rounds, 0, 0);
    if (k == 1) return top_boxes_strategy(config.f, rounds);
    if (config.policy.reward(k) >= 1.0)
        throw std::invalid_argument(
            "approx_sgreedy_strategy: C(k) = 1 leaves the value function without slope; "
            "the bisection step bound diverges");
    if (config.f.prob(boxes - 1) < 1e-12)
        std::cerr << "approx_sgreedy_strategy: warning: smallest box mass "
                  << config.f.prob(boxes - 1)
                  << " is near machine precision; step bounds hold but accuracy may not\n";

    const double eps = params.value_slack;
    const double delta = params.mass_slack;
    const int max_outer =
        64 + k * static_cast<int>(std::ceil(std::log2(4.0 * boxes / delta)));
    const double lipschitz = std::pow(4.0, k - 1);

    Grid entries(boxes, rounds);
    std::vector<double> before(boxes, 1.0);  // remaining mass per box
    std::vector<double> column(boxes, 0.0);
    const int horizon = std::min(rounds, boxes);

    for (int t = 0; t < horizon; ++t) {
        double lo = 0.0, hi = config.f.prob(0);
        bool accepted = false;
        for (int iter = 0; iter < max_outer && !accepted; ++iter) {
            const double w = 0.5 * (lo + hi);
            double sum = 0.0;
            for (int x = 0; x < boxes; ++x) {
                const double q = before[x];
                const double fx = config.f.prob(x);
                double a = 0.0;
                if (q > 1e-15) {
                    const double value_empty = fx * value_factor(config.policy, k, q, 0.0);
                    const double value_full = fx * value_factor(config.policy, k, q, q);
                    if (value_empty <= w) {
                        a = 0.0;  // even untouched the box is worth at most w
                    } else if (value_full >= w) {
                        a = q;  // fully drained the box still meets w
                    } else {
                        // Invert the strictly decreasing value by bisection
                        // until both the entry and the value are pinned.
                        double p_lo = 0.0, p_hi = q;
                        const double width_target =
                            std::min(delta / (4.0 * boxes), eps / (2.0 * fx * lipschitz));
                        for (int step = 0; step < 200 && p_hi - p_lo > width_target; ++step) {
                            const double mid = 0.5 * (p_lo + p_hi);
                            if (fx * value_factor(config.policy, k, q, mid) > w)
                                p_lo = mid;
                            else
                                p_hi = mid;
                        }
                        a = 0.5 * (p_lo + p_hi);
                    }
                }
                column[x] = a;
                sum += a;
            }
            if (sum > 1.0) {
                lo = w;  // w too small: the column overfills
            } else if (sum < 1.0 - delta) {
                hi = w;  // w too large: the column is too thin
            } else {
                accepted = true;
            }
        }
        if (!accepted)
            throw std::runtime_error(
                "approx_sgreedy_strategy: column search exceeded its iteration cap "
                "(floating-point pathology)");
        for (int x = 0; x < boxes; ++x) {
            entries.at(x, t) = column[x];
            before[x] =
                std::max(before[x] - column[x], 0.0);
        }
    }
    return StrategyMatrix::from_grid(std::move(entries));
}

StrategyMatrix approx_equilibrium_strategy(const GameConfig& config, double theta) {
    const SgreedyParams params = SgreedyParams::from_theta(config, theta);
    if (config.f.box_count() == 1) return StrategyMatrix::unit(1, config.rounds, 0, 0);
    if (config.players == 1) return top_boxes_strategy(config.f, config.rounds);
    return approx_sgreedy_strategy(config, params);
}

}  // namespace treasure
