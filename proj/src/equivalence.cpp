#include "wcg/equivalence.hpp"

#include "wcg/digest.hpp"
#include "wcg/signatures.hpp"
#include "wcg/solver.hpp"

namespace wcg {

namespace {

std::optional<SignatureSpace> try_signatures(const RuleId& rule, int n, int m)
{
    if (!rule.is_scoring())
        return std::nullopt;
    try {
        return SignatureSpace(rule.scoring_vector(m), n);
    } catch (const SizeLimitError&) {
        return std::nullopt;
    }
}

void check_lengths(const WeightVector& w, const WeightVector& w2)
{
    if (w.size() != w2.size())
        throw Error("weight vectors have different lengths (" + std::to_string(w.size()) + " and " +
                    std::to_string(w2.size()) + ")");
}

} // namespace

GameFingerprint fingerprint(const RuleId& rule, const WeightVector& w, int m, bool keep_winners)
{
    const ProfileSpace space(w.size(), m);
    if (space.size() > max_fingerprint_profiles)
        throw SizeLimitError("profile space for (n=" + std::to_string(w.size()) + ", m=" + std::to_string(m) +
                             ") is too large to fingerprint");
    if (keep_winners && space.size() > max_materialized_profiles)
        throw SizeLimitError("winner map is too large to keep in memory");

    GameFingerprint fp{rule.name(), w.size(), m, {}, std::nullopt};
    std::vector<std::uint8_t> kept;
    if (keep_winners)
        kept.reserve(space.size());

    Sha256 hash;
    std::string buffer;
    buffer.reserve(1 << 16);
    auto emit = [&](int winner) {
        buffer.push_back(static_cast<char>('a' + winner));
        if (keep_winners)
            kept.push_back(static_cast<std::uint8_t>(winner));
        if (buffer.size() == buffer.capacity()) {
            hash.update(buffer);
            buffer.clear();
        }
    };

    if (auto sigs = try_signatures(rule, w.size(), m)) {
        const auto table = sigs->winners(w);
        const std::uint32_t radix = space.permutations().size();
        if (w.size() == 1) {
            for (std::uint32_t r = 0; r < radix; ++r)
                emit(table[sigs->column_of_rank(r)]);
        } else {
            // The last player varies fastest: one prefix code per block of m! profiles.
            const ProfileSpace prefixes(w.size() - 1, m);
            const std::uint64_t cols = sigs->column_count();
            prefixes.for_each([&](ProfileIndex, std::span<const std::uint32_t> ranks) {
                const std::uint64_t base = sigs->code_of(ranks) * cols;
                for (std::uint32_t r = 0; r < radix; ++r)
                    emit(table[base + sigs->column_of_rank(r)]);
            });
        }
    } else {
        const WinnerEvaluator eval(rule, w, m);
        space.for_each([&](ProfileIndex, std::span<const std::uint32_t> ranks) { emit(eval(ranks)); });
    }
    hash.update(buffer);
    fp.digest = hash.hex_digest();
    if (keep_winners)
        fp.winners = std::move(kept);
    return fp;
}

std::vector<std::uint8_t> compact_winner_map(const RuleId& rule, const WeightVector& w, int m)
{
    if (auto sigs = try_signatures(rule, w.size(), m))
        return sigs->winners(w);
    return WinnerMap::compute(rule, w, m).winners;
}

EquivalenceResult games_equivalent(const RuleId& rule, const WeightVector& w, const WeightVector& w2, int m)
{
    check_lengths(w, w2);
    const WeightVector a = w.sorted();
    const WeightVector b = w2.sorted();
    EquivalenceResult result;
    if (a == b)
        return result;
    if (auto sigs = try_signatures(rule, a.size(), m)) {
        const auto wa = sigs->winners(a);
        const auto wb = sigs->winners(b);
        for (std::uint64_t code = 0; code < wa.size(); ++code) {
            if (wa[code] != wb[code]) {
                result.equivalent = false;
                result.witness = sigs->first_profile(code);
                break;
            }
        }
        return result;
    }
    const ProfileSpace space(a.size(), m);
    const WinnerEvaluator ea(rule, a, m);
    const WinnerEvaluator eb(rule, b, m);
    std::vector<std::uint32_t> ranks(a.size());
    for (ProfileIndex j = 0; j < space.size(); ++j) {
        space.decode_ranks(j, ranks);
        if (ea(ranks) != eb(ranks)) {
            result.equivalent = false;
            result.witness = j;
            break;
        }
    }
    return result;
}

ConstraintSystem class_inequalities(const ScoringVector& s, const WeightVector& w, int m)
{
    if (s.size() != m)
        throw Error("scoring vector length does not match m");
    const SignatureSpace space(s, w.size());
    return build_constraints(space, space.winners(w.sorted()), false);
}

} // namespace wcg
