#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wcg/preferences.hpp"
#include "wcg/rules.hpp"

namespace wcg {

struct RuleSpec {
    RuleId rule;
    WeightVector weights;
};

struct DisagreementReport {
    RuleSpec first;
    RuleSpec second;
    int alternatives = 0;
    bool exact = true;
    /// Profiles examined: (m!)^n for exact mode, the sample count otherwise.
    std::uint64_t total = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t seed = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
    /// Smallest disagreeing profile index (exact mode).
    std::optional<ProfileIndex> witness;

    /// "numerator/denominator" in lowest terms ("0/1" when none).
    std::string fraction() const;
};

/// Largest profile space the exact mode walks.
inline constexpr std::uint64_t max_exact_profiles = std::uint64_t{1} << 32;

DisagreementReport disagreement_exact(const RuleSpec& a, const RuleSpec& b, int m);

/// Uniform random profiles. Sample t draws from a SplitMix64 stream seeded
/// with seed + (t + 1) * 0x9e3779b97f4a7c15; each player's ranking is a
/// Fisher-Yates shuffle of (a, b, ...) using multiply-shift bounding. The
/// result does not depend on the number of threads.
DisagreementReport disagreement_montecarlo(const RuleSpec& a, const RuleSpec& b, int m, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads = 1);

/// The ranking sequence sample t uses for its players, for reproducibility checks.
Profile montecarlo_profile(int n, int m, std::uint64_t seed, std::uint64_t t);

} // namespace wcg
