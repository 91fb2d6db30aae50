#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcg/constraints.hpp"
#include "wcg/preferences.hpp"
#include "wcg/rules.hpp"
#include "wcg/signatures.hpp"

namespace wcg {

struct SolverLimits {
    /// Largest weight sum the integer search may reach.
    std::int64_t max_sum = std::int64_t{1} << 40;
    /// Search nodes (candidate prefixes or branch-and-bound nodes).
    std::uint64_t max_nodes = 200'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_deadline() const;
};

/// A choice mapping over the full profile space: winners[j] is the index of
/// the alternative chosen at the profile with index j.
struct WinnerMap {
    std::string rule;
    int players = 0;
    int alternatives = 0;
    std::vector<std::uint8_t> winners;

    /// Materializes the map of (rule, w) over all (m!)^n profiles.
    static WinnerMap compute(const RuleId& rule, const WeightVector& w, int m);

    /// Header "rule n m", then either (m!)^n lines "index winner" (winner as
    /// a letter or 0-based number) or one line of (m!)^n winner letters.
    static WinnerMap parse(std::string_view text);
    std::string to_text(bool dense = true) const;
};

/// Largest map WinnerMap::compute or parse will materialize.
inline constexpr std::uint64_t max_materialized_profiles = std::uint64_t{1} << 28;

struct FeasibilityResult {
    bool feasible = false;
    std::optional<WeightVector> weights;
    /// A row no non-negative vector satisfies, when one was found.
    std::optional<LinearConstraint> contradiction;
    /// Profile whose rows first made the system contradictory, or where two
    /// profiles with identical score matrices were given different winners.
    std::optional<ProfileIndex> witness;
};

struct MinSumResult {
    WeightVector weights;
    /// Another vector with the same sum also satisfies the system.
    bool multiple = false;
};

/// Rows for every profile of the map: strict preference for the prescribed
/// winner over lower-indexed alternatives, weak over higher-indexed ones.
ConstraintSystem build_constraints(const WinnerMap& map, const ScoringVector& s, bool monotone);

/// Same rows from per-signature winners.
ConstraintSystem build_constraints(const SignatureSpace& space, std::span<const std::uint8_t> winners, bool monotone);

/// Some non-negative integer solution, or proof that none exists.
FeasibilityResult solve_feasible(const ConstraintSystem& sys, const SolverLimits& limits = {});

/// A solution of minimum sum; among those the lexicographically smallest.
/// Candidates are restricted to non-increasing vectors when the system
/// contains all monotone rows. nullopt when infeasible.
std::optional<MinSumResult> solve_min_sum(const ConstraintSystem& sys, const SolverLimits& limits = {});

/// Minimum-sum sorted weight vector inducing the same game as w.
/// Supported for scoring rules and Copeland.
MinSumResult minimal_representation_detail(const RuleId& rule, const WeightVector& w, int m,
                                           const SolverLimits& limits = {});
WeightVector minimal_representation(const RuleId& rule, const WeightVector& w, int m,
                                    const SolverLimits& limits = {});

/// Decides whether the map is induced by the scoring rule s under some
/// integer weights. A returned vector has been re-checked on every profile.
FeasibilityResult is_r_weighted(const WinnerMap& map, const ScoringVector& s, const SolverLimits& limits = {});

} // namespace wcg
