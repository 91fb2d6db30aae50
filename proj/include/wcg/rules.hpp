#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "wcg/common.hpp"
#include "wcg/preferences.hpp"

namespace wcg {

using Rational = boost::rational<std::int64_t>;

/// Non-negative integer voting weights, one per player. The total is kept
/// exactly; construction fails if it would overflow.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(IntVector values);
    WeightVector(std::initializer_list<std::int64_t> values);
    explicit WeightVector(const std::vector<std::int64_t>& values);

    /// "5,3,2,2"
    static WeightVector parse(std::string_view text);
    static WeightVector zeros(int n) { return WeightVector(IntVector::Zero(n)); }

    int size() const { return static_cast<int>(values_.size()); }
    std::int64_t operator[](int i) const { return values_[i]; }
    std::int64_t sum() const { return sum_; }
    bool is_zero() const { return sum_ == 0; }
    const IntVector& values() const { return values_; }
    std::vector<std::int64_t> to_std() const { return {values_.data(), values_.data() + values_.size()}; }

    /// Non-increasing copy.
    WeightVector sorted() const;
    bool is_sorted() const;
    WeightVector scaled(std::int64_t factor) const;
    /// result[i] = w[pi[i]], matching permute_players.
    WeightVector permuted(std::span<const int> pi) const;

    std::string to_string() const;

    friend bool operator==(const WeightVector& a, const WeightVector& b)
    {
        return a.values_.size() == b.values_.size() && a.values_ == b.values_;
    }

private:
    IntVector values_;
    std::int64_t sum_ = 0;
};

/// Canonical representative order: weight sum first, then lexicographic.
bool representative_less(const WeightVector& a, const WeightVector& b);

/// Non-increasing rational score tuple. Kept both exactly and as the integer
/// vector obtained by multiplying through by the lcm of the denominators;
/// winners are invariant under that positive scaling.
class ScoringVector {
public:
    ScoringVector() = default;
    explicit ScoringVector(std::vector<Rational> scores);

    /// "1,1/2,0"
    static ScoringVector parse(std::string_view text);
    static ScoringVector borda(int m);
    static ScoringVector plurality(int m);
    /// (0, ..., 0, -1)
    static ScoringVector antiplurality(int m);

    int size() const { return static_cast<int>(scores_.size()); }
    const std::vector<Rational>& scores() const { return scores_; }
    const IntVector& integer_scores() const { return integer_; }
    std::int64_t scale() const { return scale_; }

    /// Scores depend only on whether an alternative is ranked first.
    bool depends_on_top_only() const;
    /// Scores depend only on whether an alternative is ranked last.
    bool depends_on_bottom_only() const;

    std::string to_string() const;

    friend bool operator==(const ScoringVector& a, const ScoringVector& b) { return a.scores_ == b.scores_; }

private:
    std::vector<Rational> scores_;
    IntVector integer_;
    std::int64_t scale_ = 1;
};

enum class RuleKind { antiplurality, borda, copeland, plurality, black, kemeny, maximin, scoring };

class RuleId {
public:
    RuleId() = default;
    RuleId(RuleKind kind) : kind_(kind) {}
    static RuleId scoring(ScoringVector s);

    /// "borda", "plurality", "antiplurality", "copeland", "black", "kemeny",
    /// "maximin", or "scoring:1,1/2,0".
    static RuleId parse(std::string_view text);

    RuleKind kind() const { return kind_; }
    bool is_scoring() const;
    /// Scoring vector for m alternatives; throws for non-scoring rules or a
    /// custom vector of a different length.
    ScoringVector scoring_vector(int m) const;
    std::string name() const;

    friend bool operator==(const RuleId& a, const RuleId& b)
    {
        return a.kind_ == b.kind_ && a.custom_ == b.custom_;
    }

private:
    RuleKind kind_ = RuleKind::plurality;
    std::optional<ScoringVector> custom_;
};

/// Weighted pairwise tallies: tally(j, k) = total weight of players ranking
/// a_j above a_k.
struct MajorityMatrix {
    IntMatrix tally;
    std::int64_t total = 0;

    int alternatives() const { return static_cast<int>(tally.rows()); }
    bool beats(int j, int k) const { return tally(j, k) > tally(k, j); }
    int wins(int j) const;
    std::optional<Alternative> condorcet_winner() const;
};

/// m x n matrix of integer-scaled scores: entry (j, i) is the score a_j
/// receives from player i.
IntMatrix score_matrix(const Profile& p, const ScoringVector& s);
/// Integer-scaled weighted scores (units of 1/s.scale()).
IntVector weighted_scores(const Profile& p, const ScoringVector& s, const WeightVector& w);

Alternative scoring_winner(const Profile& p, const ScoringVector& s, const WeightVector& w);
Alternative antiplurality_winner(const Profile& p, const WeightVector& w);
Alternative borda_winner(const Profile& p, const WeightVector& w);
Alternative plurality_winner(const Profile& p, const WeightVector& w);

MajorityMatrix majority_matrix(const Profile& p, const WeightVector& w);
Alternative copeland_winner(const Profile& p, const WeightVector& w);
Alternative black_winner(const Profile& p, const WeightVector& w);
Alternative kemeny_winner(const Profile& p, const WeightVector& w);
Alternative maximin_winner(const Profile& p, const WeightVector& w);

/// Weighted rule application; the zero weight vector always selects a_1.
Alternative apply_rule(const RuleId& rule, const WeightVector& w, const Profile& p);

/// Weighted majority game [q; w] with q = w_sum / 2.
class SimpleGame {
public:
    explicit SimpleGame(WeightVector w) : weights_(std::move(w)) {}

    int players() const { return weights_.size(); }
    /// members: bit i set for player i (0-based).
    bool is_winning(std::uint64_t members) const;
    bool is_winning(std::span<const int> members) const;

private:
    WeightVector weights_;
};

SimpleGame to_simple_game(const WeightVector& w);

/// Precompiled (rule, w, m) for evaluating many profiles given as per-player
/// permutation ranks (see PermutationTable). Immutable and thread-safe.
class WinnerEvaluator {
public:
    WinnerEvaluator(const RuleId& rule, const WeightVector& w, int m);

    int operator()(std::span<const std::uint32_t> ranks) const;
    Alternative winner(const Profile& p) const;

    int alternatives() const { return m_; }
    int players() const { return static_cast<int>(weights_.size()); }

private:
    int pairwise_winner(std::span<const std::uint32_t> ranks) const;

    RuleKind kind_;
    int m_;
    std::vector<std::int64_t> weights_;
    std::int64_t total_ = 0;
    const PermutationTable* perms_;
    std::vector<std::int64_t> columns_;      // per permutation rank: score of each alternative
    std::vector<std::uint64_t> pair_masks_;  // per permutation rank: bit (j*m+k) set iff j above k
};

} // namespace wcg
