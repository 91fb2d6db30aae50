#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcg/rules.hpp"
#include "wcg/solver.hpp"

namespace wcg {

struct EnumerationOptions {
    /// Limits for each minimum-sum extraction.
    SolverLimits limits;
    /// Search-tree nodes this call may visit before it stops with a resume state.
    std::uint64_t max_nodes = std::uint64_t{1} << 40;
    std::optional<std::chrono::steady_clock::duration> time_limit;
    /// Group profiles with identical score matrices (same result, fewer nodes).
    bool compact = true;
    /// Resume state from an interrupted run with the same (n, m, rule).
    std::string resume_state;
};

struct EnumerationResult {
    RuleId rule;
    int players = 0;
    int alternatives = 0;
    /// When nonzero the class list is the same for every m >= this value.
    int valid_for_all_m_ge = 0;
    /// Sorted minimal representatives in (sum, lexicographic) order; the zero
    /// vector is never included.
    std::vector<WeightVector> representatives;
    /// Representatives whose minimum sum is attained by more than one vector.
    std::vector<WeightVector> non_unique;
    bool exhaustive = false;
    /// Largest weight sum examined by the heuristic (0 for exact methods).
    std::int64_t search_bound = 0;
    std::string method;
    /// Non-empty when a branch-and-cut run stopped early.
    std::string resume_state;
    std::uint64_t nodes = 0;
    std::uint64_t lp_calls = 0;
};

/// Exhaustive search over winner assignments profile by profile, pruning
/// assignments no weight vector realizes. Scoring rules only.
EnumerationResult branch_and_cut(int n, int m, const RuleId& rule, const EnumerationOptions& options = {});

/// Distinct games among all sorted weight vectors with sum 1..max_sum.
/// A lower bound on the class count; never marked exhaustive.
EnumerationResult heuristic_enumerate(int n, int m, const RuleId& rule, std::int64_t max_sum);

/// Copeland classes, solved with two alternatives and valid for every m >= 2.
EnumerationResult enumerate_copeland(int n, const EnumerationOptions& options = {});

/// The n step vectors (1,0,...,0), ..., (1,...,1); requires m >= n + 1.
EnumerationResult antiplurality_closed_form(int n, int m);

/// Number of alternatives at which plurality classes are computed: min(m, n),
/// and at least 2.
int plurality_reduce(int n, int m);

/// Picks the exact method for (n, m, rule): Copeland and the antiplurality
/// and plurality shortcuts where they apply, branch-and-cut otherwise.
EnumerationResult enumerate_classes(int n, int m, const RuleId& rule, const EnumerationOptions& options = {});

} // namespace wcg
