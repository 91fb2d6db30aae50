#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wcg/preferences.hpp"
#include "wcg/rules.hpp"

namespace wcg {

/// Profiles of a scoring rule grouped by their score matrix.
///
/// Two orderings are merged when they give every alternative the same score
/// (for plurality only the top matters, for antiplurality only the bottom).
/// A signature is an n-tuple of such score columns. Profiles sharing a
/// signature have the same winner under every weight vector and impose the
/// same integer constraints, so equivalence tests and class enumeration can
/// run over signatures instead of all (m!)^n profiles.
///
/// Columns are numbered in order of their first appearance in the
/// lexicographic permutation order, so signature codes (mixed radix, player 1
/// most significant) increase with the smallest profile index of the group.
class SignatureSpace {
public:
    static constexpr std::uint64_t max_signatures = std::uint64_t{1} << 26;

    SignatureSpace(const ScoringVector& s, int n);

    int players() const { return n_; }
    int alternatives() const { return m_; }
    const ScoringVector& scoring() const { return scoring_; }
    std::uint64_t size() const { return size_; }
    int column_count() const { return static_cast<int>(column_min_rank_.size()); }

    /// Integer-scaled scores of each alternative for column c.
    std::span<const std::int64_t> column(int c) const { return {&columns_[std::size_t(c) * m_], std::size_t(m_)}; }
    int column_of_rank(std::uint32_t rank) const { return rank_column_[rank]; }

    /// Column ids of signature `code`, player order.
    void decode(std::uint64_t code, std::span<int> columns) const;
    std::uint64_t code_of(std::span<const std::uint32_t> ranks) const;
    /// Smallest profile index having this signature.
    ProfileIndex first_profile(std::uint64_t code) const;
    /// m x n score matrix of the signature.
    IntMatrix score_matrix(std::uint64_t code) const;

    /// Winner of every signature, in code order.
    std::vector<std::uint8_t> winners(const WeightVector& w) const;

    /// Calls f(code, columns) for each signature in code order.
    template <typename F>
    void for_each(F&& f) const
    {
        std::vector<int> cols(n_, 0);
        for (std::uint64_t code = 0; code < size_; ++code) {
            f(code, std::span<const int>(cols));
            for (int i = n_ - 1; i >= 0; --i) {
                if (++cols[i] < column_count())
                    break;
                cols[i] = 0;
            }
        }
    }

private:
    int n_;
    int m_;
    ScoringVector scoring_;
    std::uint64_t size_ = 1;
    const PermutationTable* perms_;
    std::vector<std::int64_t> columns_;
    std::vector<std::uint32_t> column_min_rank_;
    std::vector<int> rank_column_;
};

} // namespace wcg
