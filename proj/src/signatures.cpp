#include "wcg/signatures.hpp"

#include <map>

namespace wcg {

SignatureSpace::SignatureSpace(const ScoringVector& s, int n)
    : n_(n), m_(s.size()), scoring_(s), perms_(&PermutationTable::get(s.size()))
{
    if (n < 1)
        throw Error("need at least one player");
    std::map<std::vector<std::int64_t>, int> seen;
    rank_column_.resize(perms_->size());
    for (std::uint32_t r = 0; r < perms_->size(); ++r) {
        std::vector<std::int64_t> col(m_);
        for (int j = 0; j < m_; ++j)
            col[j] = s.integer_scores()[perms_->position(r, j)];
        auto [it, inserted] = seen.try_emplace(col, static_cast<int>(column_min_rank_.size()));
        if (inserted) {
            column_min_rank_.push_back(r);
            columns_.insert(columns_.end(), col.begin(), col.end());
        }
        rank_column_[r] = it->second;
    }
    for (int i = 0; i < n_; ++i)
        if (__builtin_mul_overflow(size_, static_cast<std::uint64_t>(column_count()), &size_) || size_ > max_signatures)
            throw SizeLimitError("too many score signatures for (n=" + std::to_string(n) + ", m=" + std::to_string(m_) + ")");
}

void SignatureSpace::decode(std::uint64_t code, std::span<int> columns) const
{
    for (int i = n_ - 1; i >= 0; --i) {
        columns[i] = static_cast<int>(code % column_count());
        code /= column_count();
    }
}

std::uint64_t SignatureSpace::code_of(std::span<const std::uint32_t> ranks) const
{
    std::uint64_t code = 0;
    for (auto r : ranks)
        code = code * column_count() + rank_column_[r];
    return code;
}

ProfileIndex SignatureSpace::first_profile(std::uint64_t code) const
{
    std::vector<int> cols(n_);
    decode(code, cols);
    ProfileIndex index = 0;
    for (int c : cols)
        index = index * perms_->size() + column_min_rank_[c];
    return index;
}

IntMatrix SignatureSpace::score_matrix(std::uint64_t code) const
{
    std::vector<int> cols(n_);
    decode(code, cols);
    IntMatrix S(m_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j)
            S(j, i) = column(cols[i])[j];
    return S;
}

std::vector<std::uint8_t> SignatureSpace::winners(const WeightVector& w) const
{
    if (w.size() != n_)
        throw Error("weight vector length does not match the number of players");
    std::vector<std::uint8_t> out(size_, 0);
    if (w.is_zero())
        return out;
    // Same overflow guard as the per-profile evaluator.
    WinnerEvaluator guard(RuleId::scoring(scoring_), w, m_);
    std::vector<std::int64_t> scores(m_);
    for_each([&](std::uint64_t code, std::span<const int> cols) {
        std::fill(scores.begin(), scores.end(), 0);
        for (int i = 0; i < n_; ++i) {
            const auto wi = w[i];
            if (wi == 0)
                continue;
            auto col = column(cols[i]);
            for (int j = 0; j < m_; ++j)
                scores[j] += wi * col[j];
        }
        int best = 0;
        for (int j = 1; j < m_; ++j)
            if (scores[j] > scores[best])
                best = j;
        out[code] = static_cast<std::uint8_t>(best);
    });
    return out;
}

} // namespace wcg
