#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "treasure/game.hpp"
#include "treasure/rng.hpp"
#include "treasure/strategies.hpp"

using namespace treasure;
using doctest::Approx;

TEST_CASE("box distribution validates and sorts") {
    CHECK_THROWS_AS(BoxDistribution({0.5, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoxDistribution({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(BoxDistribution({}), std::invalid_argument);

    BoxDistribution f({0.2, 0.5, 0.3});
    CHECK(f.prob(0) == 0.5);
    CHECK(f.prob(1) == 0.3);
    CHECK(f.prob(2) == 0.2);
    CHECK(f.label(0) == 2);
    CHECK(f.label(1) == 3);
    CHECK(f.label(2) == 1);
    CHECK(f.original() == std::vector<double>{0.2, 0.5, 0.3});
}

TEST_CASE("congestion policy kinds and invariants") {
    const auto ex = CongestionPolicy::exclusive(3);
    CHECK(ex.reward(1) == 1.0);
    CHECK(ex.reward(2) == 0.0);
    CHECK(ex.reward(3) == 0.0);

    const auto sh = CongestionPolicy::sharing(3);
    CHECK(sh.reward(2) == 0.5);
    CHECK(sh.reward(3) == Approx(1.0 / 3));

    CHECK_THROWS_AS(CongestionPolicy::table({0.9, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(CongestionPolicy::table({1.0, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(CongestionPolicy::table({1.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(CongestionPolicy::table({1.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(CongestionPolicy::table({1.0}));  // solo game
    // rewards above 1/l are allowed as long as the schedule decreases somewhere
    CHECK_NOTHROW(CongestionPolicy::table({1.0, 1.0, 1.0, 0.0}));

    CHECK(CongestionPolicy::sharing(2).extended(4).reward(4) == Approx(0.25));
    CHECK_THROWS_AS(CongestionPolicy::table({1.0, 0.5}).extended(3), std::invalid_argument);
}

TEST_CASE("strategy matrix invariants and remaining mass") {
    CHECK_THROWS_AS(StrategyMatrix::from_rows({{0.6, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(StrategyMatrix::from_rows({{0.6}, {0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(StrategyMatrix::from_rows({{1.2}}), std::invalid_argument);
    CHECK_THROWS_AS(StrategyMatrix::from_rows({{-0.2}}), std::invalid_argument);

    const StrategyMatrix zero(2, 3);
    for (int x = 0; x < 2; ++x)
        for (int t = 0; t <= 3; ++t) CHECK(zero.remaining(x, t) == 1.0);

    const auto once = StrategyMatrix::unit(2, 2, 0, 0);
    CHECK(once.remaining(0, 0) == 1.0);
    CHECK(once.remaining(0, 1) == 0.0);
    CHECK(once.remaining(1, 2) == 1.0);

    const auto partial = StrategyMatrix::from_rows({{0.3, 0.2}});
    CHECK(partial.remaining(0, 2) == Approx(0.5).epsilon(1e-12));
    CHECK(partial.row_sum(0) == Approx(0.5));
    CHECK(partial.col_sum(1) == Approx(0.2));
    CHECK_THROWS_AS(partial.remaining(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(partial.remaining(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(partial.at(0, 2), std::invalid_argument);
}

TEST_CASE("dimension mismatches are rejected") {
    const GameConfig cfg(BoxDistribution({0.5, 0.5}), CongestionPolicy::exclusive(2), 1, 2);
    const Profile others = Profile::symmetric(uniform_strategy(3, 1), 1);
    CHECK_THROWS_AS(box_value(cfg, others, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(utility(cfg, Profile::symmetric(uniform_strategy(2, 1), 1),
                            uniform_strategy(2, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_probability(cfg.f, others), std::invalid_argument);
}

TEST_CASE("collision reward closed forms") {
    CHECK(collision_reward(CongestionPolicy::exclusive(2), 2, 0.5) == Approx(0.5));
    CHECK(collision_reward(CongestionPolicy::sharing(2), 2, 1.0) == Approx(0.5));
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const int k = testgen::random_int(rng, 1, 6);
        CHECK(collision_reward(testgen::random_policy(rng, k), k, 0.0) == Approx(1.0));
    }
    CHECK_THROWS_AS(collision_reward(CongestionPolicy::sharing(2), 2, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(collision_reward(CongestionPolicy::sharing(2), 2, -0.1),
                    std::invalid_argument);
}

TEST_CASE("value factor closed forms") {
    // with full remaining mass it reduces to the collision reward
    Rng rng(12);
    for (int rep = 0; rep < 30; ++rep) {
        const int k = testgen::random_int(rng, 2, 6);
        const auto policy = testgen::random_policy(rng, k);
        const double p = rng.uniform();
        CHECK(value_factor(policy, k, 1.0, p) ==
              Approx(collision_reward(policy, k, p)).epsilon(1e-12));
    }
    CHECK(value_factor(CongestionPolicy::exclusive(2), 2, 0.8, 0.3) == Approx(0.5));
    CHECK(value_factor(CongestionPolicy::sharing(3), 3, 1.0, 1.0) == Approx(1.0 / 3));
    CHECK_THROWS_AS(value_factor(CongestionPolicy::sharing(2), 2, 0.4, 0.5),
                    std::invalid_argument);
}

namespace {

GameConfig golden_sharing_config() {
    return GameConfig(BoxDistribution({4.0 / 7, 3.0 / 7}), CongestionPolicy::sharing(2), 2, 2);
}

StrategyMatrix golden_sharing_strategy() {
    return StrategyMatrix::from_rows({{5.0 / 7, 2.0 / 7}, {2.0 / 7, 5.0 / 7}});
}

}  // namespace

TEST_CASE("box values: solo, exclusive and the sharing golden instance") {
    // a lone player gains the prior mass no matter the round
    {
        const GameConfig cfg(BoxDistribution({0.6, 0.4}), CongestionPolicy::exclusive(1), 3, 1);
        const Profile none = Profile::none(2, 3);
        for (int x = 0; x < 2; ++x)
            for (int t = 0; t < 3; ++t) CHECK(box_value(cfg, none, x, t) == Approx(cfg.f.prob(x)));
    }
    // one opponent spreading over two boxes halves the first-round value
    {
        const GameConfig cfg(BoxDistribution({0.5, 0.5}), CongestionPolicy::exclusive(2), 1, 2);
        const Profile others = Profile::symmetric(uniform_strategy(2, 1), 1);
        CHECK(box_value(cfg, others, 0, 0) == Approx(0.25));
    }
    // sharing-policy fixture with known rational values
    {
        const GameConfig cfg = golden_sharing_config();
        const Profile others = Profile::symmetric(golden_sharing_strategy(), 1);
        CHECK(box_value(cfg, others, 0, 0) == Approx(18.0 / 49).epsilon(1e-12));
        CHECK(box_value(cfg, others, 0, 1) == Approx(4.0 / 49).epsilon(1e-12));
        CHECK(box_value(cfg, others, 1, 0) == Approx(18.0 / 49).epsilon(1e-12));
        CHECK(box_value(cfg, others, 1, 1) == Approx(15.0 / 98).epsilon(1e-12));
    }
}

TEST_CASE("utilities: golden instance and solo coverage") {
    const GameConfig cfg = golden_sharing_config();
    const auto a = golden_sharing_strategy();
    const Profile others = Profile::symmetric(a, 1);
    CHECK(utility(cfg, others, a) == Approx(0.5).epsilon(1e-12));
    const auto b = pure_strategy({0, 1}, 2, 2);
    CHECK(utility(cfg, others, b) == Approx(51.0 / 98).epsilon(1e-12));
    CHECK(utility_at(cfg, others, a, 0) == Approx(18.0 / 49).epsilon(1e-12));

    const GameConfig solo(BoxDistribution({0.5, 0.3, 0.2}), CongestionPolicy::exclusive(1), 2, 1);
    const auto top = pure_strategy({0, 1}, 3, 2);
    CHECK(utility(solo, Profile::none(3, 2), top) == Approx(0.8));
}

TEST_CASE("success probability and the coordinated optimum") {
    const BoxDistribution even({0.5, 0.5});
    CHECK(success_probability(even, Profile::symmetric(StrategyMatrix::unit(2, 1, 0, 0), 1)) ==
          Approx(0.5));
    CHECK(success_probability(even, Profile::symmetric(StrategyMatrix::unit(2, 1, 0, 0), 2)) ==
          Approx(0.5));  // overlapping visits are wasted
    CHECK(success_probability(even, Profile::symmetric(uniform_strategy(2, 1), 2)) ==
          Approx(0.75));

    CHECK(optimal_success(even, 1, 2) == Approx(1.0));
    CHECK(optimal_success(BoxDistribution({0.5, 0.3, 0.2}), 1, 2) == Approx(0.8));
    Rng opt_rng(3);
    CHECK(optimal_success(testgen::random_f(opt_rng, 6), 3, 2) == Approx(1.0));
}

TEST_CASE("analytic values match outcome enumeration on explicit mixtures") {
    Rng rng(2024);
    for (int rep = 0; rep < 150; ++rep) {
        const int boxes = testgen::random_int(rng, 1, 3);
        const int rounds = testgen::random_int(rng, 1, 3);
        const int n = testgen::random_int(rng, 1, 3);  // opponents
        const GameConfig cfg(testgen::random_f(rng, boxes), testgen::random_policy(rng, n + 1),
                             rounds, n + 1);
        std::vector<testgen::PureMixture> mixtures;
        std::vector<StrategyMatrix> matrices;
        for (int i = 0; i < n; ++i) {
            mixtures.push_back(testgen::random_mixture(rng, boxes, rounds));
            matrices.push_back(testgen::mixture_matrix(mixtures.back(), boxes, rounds));
        }
        const Profile others(matrices);
        for (int x = 0; x < boxes; ++x)
            for (int t = 0; t < rounds; ++t)
                CHECK(box_value(cfg, others, x, t) ==
                      Approx(oracle::box_value(cfg, mixtures, x, t)).epsilon(1e-10));
    }
}

TEST_CASE("property: collision reward strictly decreases") {
    Rng rng(7);
    for (int rep = 0; rep < 300; ++rep) {
        const int k = testgen::random_int(rng, 2, 6);
        const auto policy = testgen::random_policy(rng, k);
        double p = rng.uniform() * 0.9;
        double gap = 0.02 + rng.uniform() * (1.0 - p - 0.02);
        REQUIRE(collision_reward(policy, k, p) > collision_reward(policy, k, p + gap));
    }
}

TEST_CASE("property: values never grow over time, strictly shrink under visits") {
    Rng rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = testgen::random_int(rng, 2, 5);
        const int boxes = testgen::random_int(rng, 2, 4);
        const int rounds = testgen::random_int(rng, 2, 4);
        const GameConfig cfg(testgen::random_f(rng, boxes), testgen::random_policy(rng, k),
                             rounds, k);
        const auto a = testgen::random_substochastic(rng, boxes, rounds);
        const Profile others = Profile::symmetric(a, k - 1);
        for (int x = 0; x < boxes; ++x)
            for (int t = 0; t + 1 < rounds; ++t) {
                const double now = box_value(cfg, others, x, t);
                const double later = box_value(cfg, others, x, t + 1);
                REQUIRE(later <= now + 1e-12);
                if (a.at(x, t + 1) >= 0.05) REQUIRE(later < now);
            }
    }
}

TEST_CASE("property: piling mass on a cell lowers its value") {
    Rng rng(9);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = testgen::random_int(rng, 2, 5);
        const int boxes = testgen::random_int(rng, 2, 4);
        const int rounds = testgen::random_int(rng, 1, 4);
        const GameConfig cfg(testgen::random_f(rng, boxes), testgen::random_policy(rng, k),
                             rounds, k);
        const auto a = testgen::random_substochastic(rng, boxes, rounds);
        int x = -1, t = -1;
        for (int xx = 0; xx < boxes && x < 0; ++xx)
            for (int tt = 0; tt < rounds && t < 0; ++tt)
                if (a.at(xx, tt) >= 0.05) {
                    x = xx;
                    t = tt;
                }
        if (x < 0) continue;
        // b equals a on box x before round t, with less mass at (x, t)
        std::vector<std::vector<double>> rows(boxes, std::vector<double>(rounds, 0.0));
        for (int xx = 0; xx < boxes; ++xx)
            for (int tt = 0; tt < rounds; ++tt) rows[xx][tt] = a.at(xx, tt);
        rows[x][t] *= 0.5;
        const auto b = StrategyMatrix::from_rows(rows);
        const double va = box_value(cfg, Profile::symmetric(a, k - 1), x, t);
        const double vb = box_value(cfg, Profile::symmetric(b, k - 1), x, t);
        REQUIRE(va < vb);
    }
}

TEST_CASE("property: two-sided bounds on the value drop") {
    Rng rng(10);
    for (int rep = 0; rep < 300; ++rep) {
        const int k = testgen::random_int(rng, 2, 8);
        const auto policy = testgen::random_policy(rng, k);
        const double q = 0.05 + 0.95 * rng.uniform();
        const double p = rng.uniform() * q * 0.8;
        const double eps = 0.01 + rng.uniform() * (q - p - 0.01);
        if (eps <= 0.0) continue;
        const double drop = value_factor(policy, k, q, p) - value_factor(policy, k, q, p + eps);
        const double lower = (1.0 - policy.reward(k)) / (k - 1) * std::pow(eps, k - 1);
        const double upper = std::pow(4.0, k - 1) * eps;
        REQUIRE(drop >= lower - 1e-12);
        REQUIRE(drop <= upper + 1e-12);
    }
}

TEST_CASE("property: binomial tails grow at least like eps^n") {
    Rng rng(13);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = testgen::random_int(rng, 1, 8);
        const int i = testgen::random_int(rng, 1, n);
        const double p = rng.uniform() * 0.95;
        const double eps = rng.uniform() * (1.0 - p);
        const double grown = oracle::binomial_tail(n, i, p + eps);
        const double base = oracle::binomial_tail(n, i, p);
        REQUIRE(grown - base >= std::pow(eps, n) - 1e-12);
    }
}
