#include "wcg/preferences.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace wcg {

Alternative alternative_from_letter(char c)
{
    if (c < 'a' || c > 'z')
        throw ParseError(std::string("invalid alternative letter '") + c + "'");
    return {c - 'a'};
}

Preference::Preference(std::vector<int> ranking) : ranking_(std::move(ranking)), position_(ranking_.size(), -1)
{
    const int m = size();
    if (m < 1)
        throw Error("preference must rank at least one alternative");
    for (int pos = 0; pos < m; ++pos) {
        const int a = ranking_[pos];
        if (a < 0 || a >= m)
            throw Error("alternative index " + std::to_string(a) + " out of range for m=" + std::to_string(m));
        if (position_[a] != -1)
            throw Error("alternative '" + std::string(1, Alternative{a}.letter()) + "' ranked twice");
        position_[a] = pos;
    }
}

Preference Preference::parse(std::string_view text)
{
    std::vector<int> ranking;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        ranking.push_back(alternative_from_letter(c).index);
    }
    if (ranking.size() < 2)
        throw ParseError("a ranking needs at least two alternatives: '" + std::string(text) + "'");
    std::vector<bool> seen(ranking.size(), false);
    for (int a : ranking) {
        if (a >= static_cast<int>(ranking.size()))
            throw ParseError("ranking '" + std::string(text) + "' skips an alternative");
        if (seen[a])
            throw ParseError("ranking '" + std::string(text) + "' repeats '" + std::string(1, Alternative{a}.letter()) + "'");
        seen[a] = true;
    }
    return Preference(std::move(ranking));
}

std::string Preference::to_string() const
{
    std::string s;
    for (int a : ranking_)
        s.push_back(Alternative{a}.letter());
    return s;
}

Profile::Profile(std::vector<Preference> prefs) : prefs_(std::move(prefs))
{
    for (const auto& p : prefs_)
        if (p.size() != prefs_.front().size())
            throw Error("all preferences in a profile must rank the same alternatives");
}

Profile Profile::parse(std::string_view text)
{
    std::vector<Preference> prefs;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos)
            comma = text.size();
        prefs.push_back(Preference::parse(text.substr(start, comma - start)));
        start = comma + 1;
    }
    for (const auto& p : prefs)
        if (p.size() != prefs.front().size())
            throw ParseError("rankings in profile '" + std::string(text) + "' have different lengths");
    return Profile(std::move(prefs));
}

std::string Profile::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < prefs_.size(); ++i) {
        if (i)
            s.push_back(',');
        s += prefs_[i].to_string();
    }
    return s;
}

PermutationTable::PermutationTable(int m) : m_(m)
{
    if (m < 1 || m > max_alternatives)
        throw SizeLimitError("permutation tables support 1 <= m <= " + std::to_string(max_alternatives) +
                             ", got m=" + std::to_string(m));
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        rankings_.insert(rankings_.end(), perm.begin(), perm.end());
    } while (std::next_permutation(perm.begin(), perm.end()));
    count_ = static_cast<std::uint32_t>(rankings_.size() / m);
    positions_.resize(rankings_.size());
    for (std::uint32_t r = 0; r < count_; ++r)
        for (int pos = 0; pos < m; ++pos)
            positions_[std::size_t(r) * m + rankings_[std::size_t(r) * m + pos]] = pos;
}

const PermutationTable& PermutationTable::get(int m)
{
    static std::array<std::unique_ptr<PermutationTable>, max_alternatives + 1> tables;
    static std::mutex mutex;
    if (m < 1 || m > max_alternatives)
        throw SizeLimitError("permutation tables support 1 <= m <= " + std::to_string(max_alternatives) +
                             ", got m=" + std::to_string(m));
    std::lock_guard lock(mutex);
    if (!tables[m])
        tables[m] = std::make_unique<PermutationTable>(m);
    return *tables[m];
}

std::uint32_t PermutationTable::rank_of(std::span<const int> ranking) const
{
    // Lehmer code: count smaller unused elements at each position.
    std::uint32_t rank = 0;
    std::uint32_t used = 0;
    for (int pos = 0; pos < m_; ++pos) {
        const int a = ranking[pos];
        const int smaller_unused = a - std::popcount(used & ((1u << a) - 1));
        rank = rank * static_cast<std::uint32_t>(m_ - pos) + static_cast<std::uint32_t>(smaller_unused);
        used |= 1u << a;
    }
    return rank;
}

ProfileIndex profile_count(int n, int m)
{
    if (n < 1 || m < 2)
        throw Error("profile spaces need n >= 1 and m >= 2, got n=" + std::to_string(n) + ", m=" + std::to_string(m));
    if (m > PermutationTable::max_alternatives)
        throw SizeLimitError("profile space too large for (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    ProfileIndex factorial = 1;
    for (int k = 2; k <= m; ++k)
        factorial *= static_cast<ProfileIndex>(k);
    ProfileIndex total = 1;
    for (int i = 0; i < n; ++i)
        if (__builtin_mul_overflow(total, factorial, &total))
            throw SizeLimitError("(m!)^n overflows the profile index for (n=" + std::to_string(n) +
                                 ", m=" + std::to_string(m) + ")");
    return total;
}

ProfileSpace::ProfileSpace(int n, int m)
    : n_(n), m_(m), size_(profile_count(n, m)), perms_(&PermutationTable::get(m))
{
}

ProfileIndex ProfileSpace::encode(const Profile& p) const
{
    if (p.players() != n_ || p.alternatives() != m_)
        throw Error("profile shape does not match the profile space");
    ProfileIndex index = 0;
    for (const auto& pref : p)
        index = index * perms_->size() + perms_->rank_of(pref.ranking());
    return index;
}

void ProfileSpace::decode_ranks(ProfileIndex index, std::span<std::uint32_t> ranks) const
{
    if (index >= size_)
        throw Error("profile index " + std::to_string(index) + " out of range");
    for (int i = n_ - 1; i >= 0; --i) {
        ranks[i] = static_cast<std::uint32_t>(index % perms_->size());
        index /= perms_->size();
    }
}

Profile ProfileSpace::from_ranks(std::span<const std::uint32_t> ranks) const
{
    std::vector<Preference> prefs;
    prefs.reserve(n_);
    for (auto r : ranks) {
        auto ranking = perms_->ranking(r);
        prefs.emplace_back(std::vector<int>(ranking.begin(), ranking.end()));
    }
    return Profile(std::move(prefs));
}

Profile ProfileSpace::decode(ProfileIndex index) const
{
    std::vector<std::uint32_t> ranks(n_);
    decode_ranks(index, ranks);
    return from_ranks(ranks);
}

Profile project(const Profile& p, std::span<const Alternative> keep)
{
    if (keep.empty())
        throw Error("projection needs a non-empty set of alternatives");
    const int m = p.alternatives();
    std::vector<int> new_index(m, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        const int a = keep[k].index;
        if (a < 0 || a >= m)
            throw Error("projection alternative out of range");
        if (k > 0 && a <= keep[k - 1].index)
            throw Error("projection set must be strictly increasing");
        new_index[a] = static_cast<int>(k);
    }
    std::vector<Preference> prefs;
    for (const auto& pref : p) {
        std::vector<int> ranking;
        for (int a : pref.ranking())
            if (new_index[a] >= 0)
                ranking.push_back(new_index[a]);
        prefs.emplace_back(std::move(ranking));
    }
    return Profile(std::move(prefs));
}

Profile lift(const Profile& p, int target_alternatives)
{
    const int m = p.alternatives();
    if (target_alternatives < m)
        throw Error("lifting target " + std::to_string(target_alternatives) + " is below m=" + std::to_string(m));
    std::vector<Preference> prefs;
    for (const auto& pref : p) {
        std::vector<int> ranking(pref.ranking().begin(), pref.ranking().end());
        for (int a = m; a < target_alternatives; ++a)
            ranking.push_back(a);
        prefs.emplace_back(std::move(ranking));
    }
    return Profile(std::move(prefs));
}

Profile permute_players(const Profile& p, std::span<const int> pi)
{
    const int n = p.players();
    if (static_cast<int>(pi.size()) != n)
        throw Error("player permutation has wrong length");
    std::vector<bool> seen(n, false);
    std::vector<Preference> prefs;
    for (int target : pi) {
        if (target < 0 || target >= n || seen[target])
            throw Error("player permutation is not a bijection");
        seen[target] = true;
        prefs.push_back(p[target]);
    }
    return Profile(std::move(prefs));
}

} // namespace wcg
