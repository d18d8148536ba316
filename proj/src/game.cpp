#include "treasure/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace treasure {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void check_box(int x, int boxes) {
    if (x < 0 || x >= boxes) fail("box index out of range");
}

void check_round(int t, int rounds) {
    if (t < 0 || t >= rounds) fail("round index out of range");
}

}  // namespace

// --- BoxDistribution -------------------------------------------------------

BoxDistribution::BoxDistribution(std::vector<double> probs) : original_(probs) {
    if (probs.empty()) fail("BoxDistribution: empty probability vector");
    double total = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) fail("BoxDistribution: probabilities must be strictly positive");
        total += p;
    }
    if (std::abs(total - 1.0) > kDistributionTol) {
        std::ostringstream msg;
        msg << "BoxDistribution: probabilities must sum to 1 (got " << total << ")";
        fail(msg.str());
    }
    std::vector<int> order(probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return probs[a] > probs[b]; });
    sorted_.reserve(probs.size());
    labels_.reserve(probs.size());
    for (int idx : order) {
        sorted_.push_back(probs[idx]);
        labels_.push_back(idx + 1);
    }
}

// --- CongestionPolicy ------------------------------------------------------

CongestionPolicy::CongestionPolicy(PolicyKind kind, std::vector<double> rewards)
    : kind_(kind), rewards_(std::move(rewards)) {
    if (rewards_.empty()) fail("CongestionPolicy: needs at least one reward");
    if (std::abs(rewards_.front() - 1.0) > kDistributionTol)
        fail("CongestionPolicy: C(1) must equal 1");
    rewards_.front() = 1.0;
    bool below_one = false;
    for (size_t i = 0; i < rewards_.size(); ++i) {
        if (rewards_[i] < 0.0) fail("CongestionPolicy: rewards must be non-negative");
        if (i > 0 && rewards_[i] > rewards_[i - 1] + kDistributionTol)
            fail("CongestionPolicy: rewards must be non-increasing");
        if (rewards_[i] < 1.0) below_one = true;
    }
    // A constant-1 schedule is degenerate for two or more players; with a
    // single player C(1)=1 is the whole schedule and is fine.
    if (rewards_.size() >= 2 && !below_one)
        fail("CongestionPolicy: some reward must be below 1");
}

CongestionPolicy CongestionPolicy::exclusive(int k) {
    if (k < 1) fail("CongestionPolicy: player count must be positive");
    std::vector<double> r(k, 0.0);
    r.front() = 1.0;
    return CongestionPolicy(PolicyKind::exclusive, std::move(r));
}

CongestionPolicy CongestionPolicy::sharing(int k) {
    if (k < 1) fail("CongestionPolicy: player count must be positive");
    std::vector<double> r(k);
    for (int l = 1; l <= k; ++l) r[l - 1] = 1.0 / l;
    return CongestionPolicy(PolicyKind::sharing, std::move(r));
}

CongestionPolicy CongestionPolicy::table(std::vector<double> rewards) {
    return CongestionPolicy(PolicyKind::table, std::move(rewards));
}

double CongestionPolicy::reward(int l) const {
    if (l < 1 || l > size()) fail("CongestionPolicy: reward index out of range");
    return rewards_[l - 1];
}

CongestionPolicy CongestionPolicy::extended(int n) const {
    if (n < 1) fail("CongestionPolicy: player count must be positive");
    if (n == size()) return *this;
    switch (kind_) {
        case PolicyKind::exclusive: return exclusive(n);
        case PolicyKind::sharing: return sharing(n);
        case PolicyKind::table:
            fail("CongestionPolicy: table policy has no implicit extension; "
                 "supply explicit rewards for the changed player count");
    }
    fail("CongestionPolicy: unknown kind");
}

std::string CongestionPolicy::kind_name() const {
    switch (kind_) {
        case PolicyKind::exclusive: return "exclusive";
        case PolicyKind::sharing: return "sharing";
        case PolicyKind::table: return "table";
    }
    return "unknown";
}

// --- StrategyMatrix --------------------------------------------------------

StrategyMatrix::StrategyMatrix(int boxes, int rounds)
    : entries_(boxes, rounds), remaining_(boxes, rounds + 1, 1.0) {
    if (boxes < 1 || rounds < 1) fail("StrategyMatrix: needs at least one box and one round");
}

StrategyMatrix::StrategyMatrix(Grid entries) : entries_(std::move(entries)) {
    const int boxes = entries_.rows;
    const int rounds = entries_.cols;
    if (boxes < 1 || rounds < 1) fail("StrategyMatrix: needs at least one box and one round");
    for (double& v : entries_.data) {
        if (v < -kStructuralTol || v > 1.0 + kStructuralTol)
            fail("StrategyMatrix: entries must lie in [0, 1]");
        v = std::clamp(v, 0.0, 1.0);
    }
    remaining_ = Grid(boxes, rounds + 1);
    for (int x = 0; x < boxes; ++x) {
        double left = 1.0;
        remaining_.at(x, 0) = 1.0;
        for (int t = 0; t < rounds; ++t) {
            left -= entries_.at(x, t);
            if (left < -kStructuralTol)
                fail("StrategyMatrix: row sum exceeds 1 (visits box more than once)");
            remaining_.at(x, t + 1) = std::max(left, 0.0);
        }
    }
    for (int t = 0; t < rounds; ++t) {
        double s = 0.0;
        for (int x = 0; x < boxes; ++x) s += entries_.at(x, t);
        if (s > 1.0 + kStructuralTol)
            fail("StrategyMatrix: column sum exceeds 1 (visits several boxes in one round)");
    }
}

StrategyMatrix StrategyMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) fail("StrategyMatrix: empty row data");
    Grid g(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (size_t x = 0; x < rows.size(); ++x) {
        if (rows[x].size() != rows.front().size())
            fail("StrategyMatrix: ragged row data");
        for (size_t t = 0; t < rows[x].size(); ++t)
            g.at(static_cast<int>(x), static_cast<int>(t)) = rows[x][t];
    }
    return StrategyMatrix(std::move(g));
}

StrategyMatrix StrategyMatrix::from_grid(Grid entries) { return StrategyMatrix(std::move(entries)); }

StrategyMatrix StrategyMatrix::unit(int boxes, int rounds, int x, int t) {
    check_box(x, boxes);
    check_round(t, rounds);
    Grid g(boxes, rounds);
    g.at(x, t) = 1.0;
    return StrategyMatrix(std::move(g));
}

double StrategyMatrix::at(int x, int t) const {
    check_box(x, entries_.rows);
    check_round(t, entries_.cols);
    return entries_.at(x, t);
}

double StrategyMatrix::remaining(int x, int t) const {
    check_box(x, entries_.rows);
    if (t < 0 || t > entries_.cols) fail("round index out of range");
    return remaining_.at(x, t);
}

double StrategyMatrix::col_sum(int t) const {
    check_round(t, entries_.cols);
    double s = 0.0;
    for (int x = 0; x < entries_.rows; ++x) s += entries_.at(x, t);
    return s;
}

bool StrategyMatrix::same_entries(const StrategyMatrix& other) const {
    return entries_.same_shape(other.entries_) && entries_.data == other.entries_.data;
}

// --- Profile ---------------------------------------------------------------

Profile::Profile(std::vector<StrategyMatrix> players, int boxes, int rounds)
    : players_(std::move(players)), boxes_(boxes), rounds_(rounds) {
    for (const auto& p : players_) {
        if (p.box_count() != boxes_ || p.round_count() != rounds_)
            fail("Profile: players disagree on box or round counts");
    }
}

Profile::Profile(std::vector<StrategyMatrix> players) : players_(std::move(players)) {
    if (players_.empty()) fail("Profile: needs at least one player");
    boxes_ = players_.front().box_count();
    rounds_ = players_.front().round_count();
    for (const auto& p : players_) {
        if (p.box_count() != boxes_ || p.round_count() != rounds_)
            fail("Profile: players disagree on box or round counts");
    }
}

Profile Profile::symmetric(const StrategyMatrix& strategy, int k) {
    if (k < 1) fail("Profile: needs at least one player");
    return Profile(std::vector<StrategyMatrix>(k, strategy));
}

Profile Profile::none(int boxes, int rounds) {
    if (boxes < 1 || rounds < 1) fail("Profile: dimensions must be positive");
    return Profile({}, boxes, rounds);
}

Profile Profile::without(int i) const {
    if (i < 0 || i >= size()) fail("Profile: player index out of range");
    std::vector<StrategyMatrix> rest;
    rest.reserve(players_.size() - 1);
    for (int j = 0; j < size(); ++j)
        if (j != i) rest.push_back(players_[j]);
    return Profile(std::move(rest), boxes_, rounds_);
}

bool Profile::is_symmetric() const {
    for (int i = 1; i < size(); ++i)
        if (!players_[i].same_entries(players_.front())) return false;
    return true;
}

// --- GameConfig --------------------------------------------------------------

GameConfig::GameConfig(BoxDistribution f_in, CongestionPolicy policy_in, int rounds_in,
                       int players_in)
    : f(std::move(f_in)), policy(std::move(policy_in)), rounds(rounds_in), players(players_in) {
    if (rounds < 1) fail("GameConfig: rounds must be positive");
    if (players < 1) fail("GameConfig: player count must be positive");
    if (policy.size() != players)
        fail("GameConfig: policy length must equal the player count");
}

// --- Closed-form quantities --------------------------------------------------

double collision_reward(const CongestionPolicy& policy, int k, double p) {
    if (k < 1) fail("collision_reward: player count must be positive");
    if (policy.size() < k) fail("collision_reward: policy too short for player count");
    if (p < 0.0 || p > 1.0) fail("collision_reward: probability outside [0, 1]");
    return value_factor(policy, k, 1.0, p);
}

double value_factor(const CongestionPolicy& policy, int k, double remaining_before,
                    double visit_prob) {
    if (k < 1) fail("value_factor: player count must be positive");
    if (policy.size() < k) fail("value_factor: policy too short for player count");
    if (k == 1) return 1.0;  // no rivals; the finder always collects C(1)
    const double q = remaining_before;
    const double p = visit_prob;
    if (q <= 0.0) return 0.0;
    if (q > 1.0 + kDistributionTol) fail("value_factor: remaining mass above 1");
    if (p < 0.0) fail("value_factor: negative visit probability");
    if (p > q + kStructuralTol) fail("value_factor: visit probability exceeds remaining mass");
    const int n = k - 1;
    const double rest = std::max(q - p, 0.0);
    double total = 0.0;
    double binom = 1.0;  // binom(n, i)
    for (int i = 0; i <= n; ++i) {
        total += policy.reward(i + 1) * binom * std::pow(p, i) * std::pow(rest, n - i);
        binom *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return total;
}

double box_value(const GameConfig& config, const Profile& others, int x, int t) {
    check_box(x, others.box_count());
    check_round(t, others.round_count());
    if (others.box_count() != config.f.box_count())
        fail("box_value: profile box count disagrees with the prior");
    const int n = others.size();
    if (config.policy.size() < n + 1)
        fail("box_value: policy too short for the opponent count");
    const double fx = config.f.prob(x);
    if (n == 0) return fx;  // no rivals: the finder collects C(1) = 1

    if (config.policy.kind() == PolicyKind::exclusive) {
        double prod = 1.0;
        for (const auto& b : others.players()) prod *= b.remaining(x, t + 1);
        return fx * prod;
    }
    if (others.is_symmetric()) {
        const StrategyMatrix& a = others.player(0);
        return fx * value_factor(config.policy, n + 1, a.remaining(x, t), a.at(x, t));
    }
    // Distribution of the number of opponents landing on (x, t) right now.
    // Opponents that visited x earlier zero out the reward, so they simply
    // drop out of the convolution.
    std::vector<double> count_prob(n + 1, 0.0);
    count_prob[0] = 1.0;
    int active = 0;
    for (const auto& b : others.players()) {
        const double p = b.at(x, t);
        const double untouched = b.remaining(x, t + 1);
        for (int l = active + 1; l >= 1; --l)
            count_prob[l] = count_prob[l] * untouched + count_prob[l - 1] * p;
        count_prob[0] *= untouched;
        ++active;
    }
    double total = 0.0;
    for (int l = 0; l <= n; ++l)
        total += config.policy.reward(l + 1) * count_prob[l];
    return fx * total;
}

Grid value_grid(const GameConfig& config, const Profile& others) {
    Grid v(others.box_count(), others.round_count());
    for (int x = 0; x < v.rows; ++x)
        for (int t = 0; t < v.cols; ++t) v.at(x, t) = box_value(config, others, x, t);
    return v;
}

double utility_at(const GameConfig& config, const Profile& others, const StrategyMatrix& b,
                  int t) {
    if (b.box_count() != others.box_count() || b.round_count() != others.round_count())
        fail("utility: strategy dimensions disagree with the profile");
    double u = 0.0;
    for (int x = 0; x < b.box_count(); ++x) {
        const double w = b.at(x, t);
        if (w > 0.0) u += w * box_value(config, others, x, t);
    }
    return u;
}

double utility(const GameConfig& config, const Profile& others, const StrategyMatrix& b) {
    double u = 0.0;
    for (int t = 0; t < b.round_count(); ++t) u += utility_at(config, others, b, t);
    return u;
}

double success_probability(const BoxDistribution& f, const Profile& profile) {
    if (profile.box_count() != f.box_count())
        fail("success_probability: profile box count disagrees with the prior");
    double total = 0.0;
    for (int x = 0; x < f.box_count(); ++x) total += f.prob(x) * box_success(profile, x);
    return total;
}

double box_success(const Profile& profile, int x) {
    check_box(x, profile.box_count());
    double missed = 1.0;
    for (const auto& a : profile.players()) missed *= a.remaining(x, profile.round_count());
    return 1.0 - missed;
}

double optimal_success(const BoxDistribution& f, int k, int rounds) {
    if (k < 1 || rounds < 1) fail("optimal_success: player and round counts must be positive");
    const long long coverage = static_cast<long long>(k) * rounds;
    const int m = static_cast<int>(std::min<long long>(coverage, f.box_count()));
    double total = 0.0;
    for (int x = 0; x < m; ++x) total += f.prob(x);
    return std::min(total, 1.0);
}

}  // namespace treasure
