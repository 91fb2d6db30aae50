#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcg/common.hpp"

namespace wcg {

/// Alternative a_{index+1}; printed as a lowercase letter ("a" is index 0).
struct Alternative {
    int index = 0;

    friend auto operator<=>(const Alternative&, const Alternative&) = default;

    char letter() const { return static_cast<char>('a' + index); }
};

Alternative alternative_from_letter(char c);

/// A strict total order over m alternatives, best first.
class Preference {
public:
    Preference() = default;
    explicit Preference(std::vector<int> ranking);

    static Preference parse(std::string_view text);

    int size() const { return static_cast<int>(ranking_.size()); }
    Alternative at(int position) const { return {ranking_[position]}; }
    Alternative top() const { return {ranking_.front()}; }
    Alternative bottom() const { return {ranking_.back()}; }
    int position_of(Alternative a) const { return position_[a.index]; }
    bool prefers(Alternative a, Alternative b) const { return position_[a.index] < position_[b.index]; }
    std::span<const int> ranking() const { return ranking_; }

    std::string to_string() const;

    friend bool operator==(const Preference& a, const Preference& b) { return a.ranking_ == b.ranking_; }

private:
    std::vector<int> ranking_;
    std::vector<int> position_;
};

/// One preference per player; player i is stored at index i-1.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<Preference> prefs);

    /// Comma-separated rankings, e.g. "debac,bcead". Whitespace is ignored.
    static Profile parse(std::string_view text);

    int players() const { return static_cast<int>(prefs_.size()); }
    int alternatives() const { return prefs_.empty() ? 0 : prefs_.front().size(); }
    const Preference& operator[](int i) const { return prefs_[i]; }
    auto begin() const { return prefs_.begin(); }
    auto end() const { return prefs_.end(); }

    std::string to_string() const;

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Preference> prefs_;
};

using ProfileIndex = std::uint64_t;

/// All m! orderings of m alternatives in lexicographic order of the ranking
/// sequence. Rank r is the lexicographic rank.
class PermutationTable {
public:
    static constexpr int max_alternatives = 8;

    explicit PermutationTable(int m);

    /// Shared immutable table for m alternatives.
    static const PermutationTable& get(int m);

    int alternatives() const { return m_; }
    std::uint32_t size() const { return count_; }
    std::span<const int> ranking(std::uint32_t rank) const { return {&rankings_[std::size_t(rank) * m_], std::size_t(m_)}; }
    int position(std::uint32_t rank, int alternative) const { return positions_[std::size_t(rank) * m_ + alternative]; }
    std::uint32_t rank_of(std::span<const int> ranking) const;

private:
    int m_;
    std::uint32_t count_;
    std::vector<int> rankings_;
    std::vector<int> positions_;
};

/// The canonical enumeration of P(A)^n: mixed radix over per-player
/// permutation ranks, player 1 being the most significant digit.
class ProfileSpace {
public:
    ProfileSpace(int n, int m);

    int players() const { return n_; }
    int alternatives() const { return m_; }
    ProfileIndex size() const { return size_; }
    const PermutationTable& permutations() const { return *perms_; }

    ProfileIndex encode(const Profile& p) const;
    Profile decode(ProfileIndex index) const;
    void decode_ranks(ProfileIndex index, std::span<std::uint32_t> ranks) const;
    Profile from_ranks(std::span<const std::uint32_t> ranks) const;

    /// Calls f(index, ranks) for every index in [first, last) in increasing
    /// order. ranks is a span of n permutation ranks valid during the call.
    template <typename F>
    void for_each(ProfileIndex first, ProfileIndex last, F&& f) const
    {
        if (first >= last)
            return;
        std::vector<std::uint32_t> ranks(n_);
        decode_ranks(first, ranks);
        const std::uint32_t radix = perms_->size();
        for (ProfileIndex index = first;;) {
            f(index, std::span<const std::uint32_t>(ranks));
            if (++index == last)
                break;
            for (int i = n_ - 1; i >= 0; --i) {
                if (++ranks[i] < radix)
                    break;
                ranks[i] = 0;
            }
        }
    }

    template <typename F>
    void for_each(F&& f) const { for_each(0, size_, std::forward<F>(f)); }

    class Iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Profile;
        using difference_type = std::ptrdiff_t;

        Iterator(const ProfileSpace* space, ProfileIndex index) : space_(space), index_(index) {}
        Profile operator*() const { return space_->decode(index_); }
        Iterator& operator++() { ++index_; return *this; }
        Iterator operator++(int) { auto copy = *this; ++index_; return copy; }
        ProfileIndex index() const { return index_; }
        friend bool operator==(const Iterator& a, const Iterator& b) { return a.index_ == b.index_; }

    private:
        const ProfileSpace* space_;
        ProfileIndex index_;
    };

    /// Lazy stream of profiles in increasing index order.
    Iterator begin() const { return {this, 0}; }
    Iterator end() const { return {this, size_}; }

private:
    int n_;
    int m_;
    ProfileIndex size_;
    const PermutationTable* perms_;
};

/// (m!)^n, or SizeLimitError naming (n, m) when it overflows 64 bits.
ProfileIndex profile_count(int n, int m);

/// Restriction of every player's ordering to `keep` (strictly increasing
/// alternative indices), re-indexed 0..|keep|-1.
Profile project(const Profile& p, std::span<const Alternative> keep);

/// Appends alternatives m..target-1 in index order below each ordering.
Profile lift(const Profile& p, int target_alternatives);

/// Returns (P_{pi(0)}, ..., P_{pi(n-1)}) for a bijection pi on players.
Profile permute_players(const Profile& p, std::span<const int> pi);

} // namespace wcg
