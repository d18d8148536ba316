#pragma once

#include <string>
#include <vector>

#include "treasure/matrix.hpp"

namespace treasure {

// Tolerances used across the engine. Structural checks (row/column sums,
// decomposition residuals) use kStructuralTol; probability distributions are
// required to normalize to kDistributionTol.
constexpr double kStructuralTol = 1e-9;
constexpr double kDistributionTol = 1e-12;

/// Prior over the boxes hiding the treasure. Stored sorted non-increasing;
/// the permutation back to the caller's ordering is kept so reports can show
/// the labels the caller used.
class BoxDistribution {
  public:
    /// Validates and sorts. Throws std::invalid_argument if any entry is
    /// non-positive or the entries do not sum to 1 (tolerance 1e-12).
    explicit BoxDistribution(std::vector<double> probs);

    int box_count() const { return static_cast<int>(sorted_.size()); }
    /// Probability of box x in sorted (non-increasing) order, x in 0..M-1.
    double prob(int x) const { return sorted_.at(x); }
    const std::vector<double>& probs() const { return sorted_; }
    /// 1-based position of sorted box x in the caller's original vector.
    int label(int x) const { return labels_.at(x); }
    const std::vector<int>& labels() const { return labels_; }
    /// The probabilities exactly as the caller supplied them.
    const std::vector<double>& original() const { return original_; }

  private:
    std::vector<double> sorted_;
    std::vector<double> original_;
    std::vector<int> labels_;
};

enum class PolicyKind { exclusive, sharing, table };

/// Reward schedule C(l): what each of l simultaneous first-finders receives.
/// C(1) = 1, C non-negative and non-increasing, and for schedules covering
/// two or more players at least one entry must be below 1 (a constant-1
/// schedule makes congestion meaningless).
class CongestionPolicy {
  public:
    static CongestionPolicy exclusive(int k);
    static CongestionPolicy sharing(int k);
    static CongestionPolicy table(std::vector<double> rewards);

    PolicyKind kind() const { return kind_; }
    int size() const { return static_cast<int>(rewards_.size()); }
    /// C(l) for l in 1..size().
    double reward(int l) const;
    const std::vector<double>& rewards() const { return rewards_; }

    /// Same policy re-generated for exactly n players. Exclusive and sharing
    /// have a closed form for any n; a table has no canonical extension, so
    /// resizing one throws (callers must supply explicit rewards instead).
    CongestionPolicy extended(int n) const;

    std::string kind_name() const;

  private:
    CongestionPolicy(PolicyKind kind, std::vector<double> rewards);
    PolicyKind kind_;
    std::vector<double> rewards_;
};

/// Strategy in matrix form: entry (x, t) is the probability of visiting box x
/// for the first time at round t (0-based). Rows and columns each sum to at
/// most 1; such matrices are exactly the ones realizable by a randomized
/// search strategy.
class StrategyMatrix {
  public:
    /// Zero matrix (the strategy that never opens a box).
    StrategyMatrix(int boxes, int rounds);
    /// Validates entries, row and column sums (tolerance 1e-9) and caches the
    /// remaining-mass table. Entry noise within the tolerance is clamped into
    /// [0, 1].
    static StrategyMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static StrategyMatrix from_grid(Grid entries);
    /// Single visit: box x at round t with probability 1.
    static StrategyMatrix unit(int boxes, int rounds, int x, int t);

    int box_count() const { return entries_.rows; }
    int round_count() const { return entries_.cols; }
    /// Entry access; throws on out-of-range indices.
    double at(int x, int t) const;
    const Grid& entries() const { return entries_; }

    /// Probability that box x has not been visited within the first t rounds;
    /// t ranges over 0..round_count() and remaining(x, 0) == 1.
    double remaining(int x, int t) const;

    double row_sum(int x) const { return 1.0 - remaining_.at(x, entries_.cols); }
    double col_sum(int t) const;

    bool same_entries(const StrategyMatrix& other) const;

  private:
    explicit StrategyMatrix(Grid entries);
    Grid entries_;
    Grid remaining_;  // boxes x (rounds + 1)
};

/// Ordered collection of player strategies over a common box/round grid.
/// Game profiles always hold at least one player; the empty profile exists
/// only as the opponent set of a solo player and must state its dimensions.
class Profile {
  public:
    explicit Profile(std::vector<StrategyMatrix> players);
    /// k copies of the same strategy.
    static Profile symmetric(const StrategyMatrix& strategy, int k);
    /// No opponents at all (what a single player plays against).
    static Profile none(int boxes, int rounds);

    int size() const { return static_cast<int>(players_.size()); }
    int box_count() const { return boxes_; }
    int round_count() const { return rounds_; }
    const StrategyMatrix& player(int i) const { return players_.at(i); }
    const std::vector<StrategyMatrix>& players() const { return players_; }

    /// All players except player i (the opponents player i faces).
    Profile without(int i) const;
    /// True when every player uses entrywise the same matrix.
    bool is_symmetric() const;

  private:
    Profile(std::vector<StrategyMatrix> players, int boxes, int rounds);
    std::vector<StrategyMatrix> players_;
    int boxes_ = 0;
    int rounds_ = 0;
};

/// A complete game instance: prior, reward schedule, horizon and player count.
struct GameConfig {
    GameConfig(BoxDistribution f_in, CongestionPolicy policy_in, int rounds_in, int players_in);

    BoxDistribution f;
    CongestionPolicy policy;
    int rounds;
    int players;
};

// --- Closed-form game quantities -----------------------------------------

/// Expected reward of one of k players when each of the other k-1 lands on
/// the same box independently with probability p:
///   sum_l C(l+1) * binom(k-1, l) * p^l * (1-p)^(k-1-l).
/// Strictly decreasing in p whenever the schedule is not constant 1.
double collision_reward(const CongestionPolicy& policy, int k, double p);

/// Value of a box per unit of prior mass when the k-1 opponents each carry
/// remaining mass q on it and visit it now with probability p (0 <= p <= q):
///   sum_i C(i+1) * binom(k-1, i) * p^i * (q-p)^(k-1-i)  ==  q^(k-1) * collision_reward(p/q).
double value_factor(const CongestionPolicy& policy, int k, double remaining_before,
                    double visit_prob);

/// Expected gain of an external player opening box x at round t against the
/// given opponents. Uses the product form for the exclusive policy, the
/// binomial form for symmetric opponents, and otherwise a dynamic program
/// over the number of simultaneous visitors (quadratic in the player count).
double box_value(const GameConfig& config, const Profile& others, int x, int t);

/// box_value over the whole grid.
Grid value_grid(const GameConfig& config, const Profile& others);

/// Utility of playing B against the opponents: sum over (x, t) of
/// B(x, t) * value(x, t). utility_at restricts the sum to one round.
double utility(const GameConfig& config, const Profile& others, const StrategyMatrix& b);
double utility_at(const GameConfig& config, const Profile& others, const StrategyMatrix& b,
                  int t);

/// Probability that at least one player of the profile finds the treasure.
double success_probability(const BoxDistribution& f, const Profile& profile);
/// Probability that box x specifically gets visited by some player.
double box_success(const Profile& profile, int x);

/// Success probability of the coordinated optimum: the top min(k*T, M) boxes
/// are covered with probability 1.
double optimal_success(const BoxDistribution& f, int k, int rounds);

}  // namespace treasure
