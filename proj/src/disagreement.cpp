#include "wcg/disagreement.hpp"

#include <cmath>
#include <numeric>
#include <thread>

namespace wcg {

namespace {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next()
    {
        std::uint64_t z = (state += golden);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint32_t below(std::uint32_t bound)
    {
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

void check_specs(const RuleSpec& a, const RuleSpec& b, int m)
{
    if (a.weights.size() != b.weights.size())
        throw Error("both weight vectors need the same number of players");
    if (a.weights.size() < 1 || m < 2)
        throw Error("need n >= 1 and m >= 2");
}

void sample_ranks(SplitMix64& rng, const PermutationTable& perms, int n, int m, std::uint32_t* ranks)
{
    int order[PermutationTable::max_alternatives];
    for (int i = 0; i < n; ++i) {
        std::iota(order, order + m, 0);
        for (int j = m - 1; j > 0; --j)
            std::swap(order[j], order[rng.below(static_cast<std::uint32_t>(j + 1))]);
        ranks[i] = perms.rank_of(std::span<const int>(order, m));
    }
}

} // namespace

std::string DisagreementReport::fraction() const
{
    if (disagreements == 0)
        return "0/1";
    const auto g = std::gcd(disagreements, total);
    return std::to_string(disagreements / g) + "/" + std::to_string(total / g);
}

DisagreementReport disagreement_exact(const RuleSpec& a, const RuleSpec& b, int m)
{
    check_specs(a, b, m);
    const int n = a.weights.size();
    ProfileIndex size = 0;
    try {
        size = profile_count(n, m);
    } catch (const SizeLimitError&) {
        size = max_exact_profiles + 1;
    }
    if (size > max_exact_profiles)
        throw SizeLimitError("profile space for (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                             ") is too large for exact counting; use montecarlo mode");
    const ProfileSpace space(n, m);
    const WinnerEvaluator ea(a.rule, a.weights, m);
    const WinnerEvaluator eb(b.rule, b.weights, m);
    DisagreementReport report;
    report.first = a;
    report.second = b;
    report.alternatives = m;
    report.total = space.size();
    space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
        if (ea(ranks) != eb(ranks)) {
            if (!report.witness)
                report.witness = j;
            ++report.disagreements;
        }
    });
    report.estimate = static_cast<double>(report.disagreements) / static_cast<double>(report.total);
    return report;
}

Profile montecarlo_profile(int n, int m, std::uint64_t seed, std::uint64_t t)
{
    const auto& perms = PermutationTable::get(m);
    SplitMix64 rng{seed + (t + 1) * golden};
    std::vector<std::uint32_t> ranks(n);
    sample_ranks(rng, perms, n, m, ranks.data());
    std::vector<Preference> prefs;
    for (auto r : ranks) {
        auto seq = perms.ranking(r);
        prefs.emplace_back(std::vector<int>(seq.begin(), seq.end()));
    }
    return Profile(std::move(prefs));
}

DisagreementReport disagreement_montecarlo(const RuleSpec& a, const RuleSpec& b, int m, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads)
{
    check_specs(a, b, m);
    if (samples < 1)
        throw Error("need at least one sample");
    const int n = a.weights.size();
    const WinnerEvaluator ea(a.rule, a.weights, m);
    const WinnerEvaluator eb(b.rule, b.weights, m);
    const auto& perms = PermutationTable::get(m);
    threads = std::max(1u, threads);

    auto count_range = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<std::uint32_t> ranks(n);
        std::uint64_t hits = 0;
        for (std::uint64_t t = first; t < last; ++t) {
            SplitMix64 rng{seed + (t + 1) * golden};
            sample_ranks(rng, perms, n, m, ranks.data());
            if (ea(ranks) != eb(ranks))
                ++hits;
        }
        return hits;
    };

    std::uint64_t hits = 0;
    if (threads == 1) {
        hits = count_range(0, samples);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (samples + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t first = std::min(samples, w * chunk);
            const std::uint64_t last = std::min(samples, first + chunk);
            workers.emplace_back([&, w, first, last] { partial[w] = count_range(first, last); });
        }
        for (auto& t : workers)
            t.join();
        hits = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
    }

    DisagreementReport report;
    report.first = a;
    report.second = b;
    report.alternatives = m;
    report.exact = false;
    report.total = samples;
    report.disagreements = hits;
    report.seed = seed;
    report.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    report.standard_error = std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(samples));
    return report;
}

} // namespace wcg
