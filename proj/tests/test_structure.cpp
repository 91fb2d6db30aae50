#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "wcg/equivalence.hpp"
#include "wcg/solver.hpp"

using namespace wcg;
using testing_support::sorted_up_to;
using testing_support::wv;

namespace {

/// Partition of the vectors into blocks of equal games, as a block id per vector.
std::vector<int> partition(const RuleId& rule, const std::vector<oracle::Weights>& ws, int m)
{
    std::map<std::vector<std::uint8_t>, int> ids;
    std::vector<int> out;
    for (const auto& w : ws) {
        auto map = compact_winner_map(rule, wv(w), m);
        out.push_back(ids.emplace(std::move(map), static_cast<int>(ids.size())).first->second);
    }
    return out;
}

std::vector<std::string> winner_strings(const RuleId& rule, const std::vector<oracle::Weights>& ws, int m)
{
    std::vector<std::string> out;
    for (const auto& w : ws)
        out.push_back(fingerprint(rule, wv(w), m).digest);
    return out;
}

} // namespace

TEST_SUITE("structure") {

TEST_CASE("with two alternatives the four rules partition weights alike")
{
    for (int n = 1; n <= 4; ++n) {
        const auto ws = sorted_up_to(n, 8);
        const auto base = partition(RuleId(RuleKind::copeland), ws, 2);
        for (RuleKind k : {RuleKind::antiplurality, RuleKind::borda, RuleKind::plurality})
            REQUIRE(partition(RuleId(k), ws, 2) == base);
        // Same games, not just the same partition.
        for (const auto& w : ws) {
            const auto f = fingerprint(RuleId(RuleKind::copeland), wv(w), 2).digest;
            for (RuleKind k : {RuleKind::antiplurality, RuleKind::borda, RuleKind::plurality})
                REQUIRE(fingerprint(RuleId(k), wv(w), 2).digest == f);
        }
    }
}

TEST_CASE("antiplurality with m > n has exactly the step-vector classes")
{
    for (int n = 3; n <= 4; ++n)
        for (int m = n + 1; m <= n + 2; ++m) {
            const RuleId rule(RuleKind::antiplurality);
            std::vector<oracle::Weights> steps;
            for (int k = 1; k <= n; ++k) {
                oracle::Weights s(n, 0);
                std::fill(s.begin(), s.begin() + k, 1);
                steps.push_back(s);
            }
            std::set<std::vector<std::uint8_t>> step_games;
            for (const auto& s : steps)
                step_games.insert(compact_winner_map(rule, wv(s), m));
            REQUIRE(step_games.size() == static_cast<std::size_t>(n));
            for (const auto& w : sorted_up_to(n, n == 3 ? 9 : 7)) {
                REQUIRE(step_games.count(compact_winner_map(rule, wv(w), m)) == 1);
                // The class is fixed by the number of positive weights.
                const auto positive = std::count_if(w.begin(), w.end(), [](auto x) { return x > 0; });
                REQUIRE(compact_winner_map(rule, wv(w), m) == compact_winner_map(rule, wv(steps[positive - 1]), m));
            }
        }
}

TEST_CASE("(j,1,0,...) are pairwise Borda-inequivalent for j < m")
{
    for (int m = 3; m <= 4; ++m)
        for (int n = 3; n <= 4; ++n) {
            std::vector<WeightVector> ws;
            for (int j = 1; j < m; ++j) {
                std::vector<std::int64_t> w(n, 0);
                w[0] = j;
                w[1] = 1;
                ws.emplace_back(w);
            }
            for (std::size_t a = 0; a < ws.size(); ++a)
                for (std::size_t b = a + 1; b < ws.size(); ++b)
                    REQUIRE_FALSE(games_equivalent(RuleId(RuleKind::borda), ws[a], ws[b], m).equivalent);
        }
}

TEST_CASE("Copeland equivalence does not depend on m")
{
    const auto ws = sorted_up_to(3, 6);
    const RuleId rule(RuleKind::copeland);
    const auto g2 = winner_strings(rule, ws, 2);
    const auto g3 = winner_strings(rule, ws, 3);
    const auto g4 = winner_strings(rule, ws, 4);
    for (std::size_t a = 0; a < ws.size(); ++a)
        for (std::size_t b = 0; b < ws.size(); ++b) {
            const bool e2 = g2[a] == g2[b];
            REQUIRE(e2 == (g3[a] == g3[b]));
            REQUIRE(e2 == (g4[a] == g4[b]));
        }
}

TEST_CASE("plurality equivalence is the same for all m >= n")
{
    for (int n = 2; n <= 3; ++n) {
        const auto ws = sorted_up_to(n, 10);
        const RuleId rule(RuleKind::plurality);
        const auto base = partition(rule, ws, n);
        for (int m = n + 1; m <= 6; ++m)
            REQUIRE(partition(rule, ws, m) == base);
    }
}

TEST_CASE("the cycle counterexample separates (6,4,3) from (4,4,2)")
{
    const WeightVector w{6, 4, 3};
    const WeightVector v{4, 4, 2};
    for (const auto& name : {"antiplurality", "borda", "copeland", "plurality", "black", "kemeny", "maximin"})
        CHECK(fingerprint(RuleId::parse(name), w, 2) == fingerprint(RuleId::parse(name), v, 2));
    const Profile p = Profile::parse("cab,abc,bca");
    for (const auto& x : {w, v}) {
        const MajorityMatrix mm = majority_matrix(p, x);
        CHECK(mm.beats(0, 1));
        CHECK(mm.beats(1, 2));
        CHECK(mm.beats(2, 0));
    }
    CHECK(black_winner(p, w).letter() == 'c');
    CHECK(black_winner(p, v).letter() == 'a');
    for (const auto& name : {"black", "kemeny", "maximin"})
        CHECK_FALSE(games_equivalent(RuleId::parse(name), w, v, 3).equivalent);
    CHECK(games_equivalent(RuleId(RuleKind::copeland), w, v, 3).equivalent);
}

}
