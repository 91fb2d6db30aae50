#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcg/constraints.hpp"
#include "wcg/preferences.hpp"
#include "wcg/rules.hpp"

namespace wcg {

/// Canonical identity of the committee game (rule, w) on m alternatives.
/// The digest is SHA-256 over the winner letters of all (m!)^n profiles in
/// index order; two games are identical iff their digests are.
struct GameFingerprint {
    std::string rule;
    int players = 0;
    int alternatives = 0;
    std::string digest;
    /// Present only when requested.
    std::optional<std::vector<std::uint8_t>> winners;

    friend bool operator==(const GameFingerprint& a, const GameFingerprint& b)
    {
        return a.rule == b.rule && a.players == b.players && a.alternatives == b.alternatives && a.digest == b.digest;
    }
};

/// Profile-space limit for materializing a full winner map.
inline constexpr std::uint64_t max_fingerprint_profiles = std::uint64_t{1} << 34;

GameFingerprint fingerprint(const RuleId& rule, const WeightVector& w, int m, bool keep_winners = false);

/// A smaller table with the same equality semantics as the full winner map
/// for fixed (rule, n, m): per-signature winners for scoring rules, the full
/// map otherwise.
std::vector<std::uint8_t> compact_winner_map(const RuleId& rule, const WeightVector& w, int m);

struct EquivalenceResult {
    bool equivalent = true;
    /// Smallest profile index where the sorted games disagree.
    std::optional<ProfileIndex> witness;
};

/// Compares the games of w and w2 after sorting both non-increasingly.
EquivalenceResult games_equivalent(const RuleId& rule, const WeightVector& w, const WeightVector& w2, int m);

/// The rows every sorted vector in the class of sorted w must satisfy; a
/// sorted vector satisfies them iff it induces the same scoring game.
ConstraintSystem class_inequalities(const ScoringVector& s, const WeightVector& w, int m);

} // namespace wcg
