#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "wcg/rules.hpp"

using namespace wcg;
using testing_support::profile_of;
using testing_support::wv;

namespace {

const char* const table_profile = "debac,bcead,ceadb,cbade";
const char* const cycle_profile = "cab,abc,bca";

const std::vector<std::string> all_rules{"antiplurality", "borda", "copeland", "plurality", "black", "kemeny", "maximin"};

std::vector<int> inverse(const std::vector<int>& pi)
{
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i)
        inv[pi[i]] = static_cast<int>(i);
    return inv;
}

} // namespace

TEST_SUITE("rules") {

TEST_CASE("four rules on the five-alternative example")
{
    const Profile p = Profile::parse(table_profile);
    const WeightVector w{5, 3, 2, 2};
    CHECK(antiplurality_winner(p, w).letter() == 'a');
    CHECK(borda_winner(p, w).letter() == 'b');
    CHECK(copeland_winner(p, w).letter() == 'c');
    CHECK(plurality_winner(p, w).letter() == 'd');

    const IntVector borda = weighted_scores(p, ScoringVector::borda(5), w);
    CHECK(borda[1] == 28);
    CHECK(borda.maxCoeff() == 28);
    const IntVector plur = weighted_scores(p, ScoringVector::plurality(5), w);
    CHECK(plur[3] == 5);
    CHECK(plur.maxCoeff() == 5);
    const IntVector anti = weighted_scores(p, ScoringVector::antiplurality(5), w);
    CHECK(anti[0] == 0);

    const MajorityMatrix mm = majority_matrix(p, w);
    CHECK(mm.wins(2) == 3);
    for (int a = 0; a < 5; ++a)
        CHECK(mm.wins(a) <= 3);
}

TEST_CASE("weighted Borda scores of the three-player example")
{
    const Profile p = Profile::parse("cab,bac,abc");
    const IntVector s = weighted_scores(p, ScoringVector::borda(3), WeightVector{5, 2, 1});
    CHECK(s[0] == 9);
    CHECK(s[1] == 5);
    CHECK(s[2] == 10);
    CHECK(borda_winner(p, WeightVector{5, 2, 1}).letter() == 'c');
}

TEST_CASE("unanimity and dictatorship")
{
    const Profile u = Profile::parse("abc,abc,abc");
    for (const auto& name : all_rules)
        CHECK(apply_rule(RuleId::parse(name), WeightVector{3, 1, 2}, u).letter() == 'a');
    CHECK(scoring_winner(u, ScoringVector::parse("1,1/2,0"), WeightVector{1, 1, 1}).letter() == 'a');

    const Profile d = Profile::parse("cab");
    CHECK(borda_winner(d, WeightVector{1}).letter() == 'c');
    CHECK(plurality_winner(d, WeightVector{1}).letter() == 'c');
}

TEST_CASE("zero weights select the first alternative")
{
    const Profile p = Profile::parse("cba,bca,cab");
    for (const auto& name : all_rules)
        CHECK(apply_rule(RuleId::parse(name), WeightVector{0, 0, 0}, p).letter() == 'a');
}

TEST_CASE("majority tallies on the cycle")
{
    const Profile p = Profile::parse(cycle_profile);
    const MajorityMatrix mm = majority_matrix(p, WeightVector{6, 4, 3});
    CHECK(mm.tally(0, 1) == 10);
    CHECK(mm.tally(1, 0) == 3);
    CHECK(mm.tally(1, 2) == 7);
    CHECK(mm.tally(2, 1) == 6);
    CHECK(mm.tally(2, 0) == 9);
    CHECK(mm.tally(0, 2) == 4);
    CHECK(mm.beats(0, 1));
    CHECK(mm.beats(1, 2));
    CHECK(mm.beats(2, 0));
    CHECK_FALSE(mm.condorcet_winner().has_value());

    const MajorityMatrix u = majority_matrix(Profile::parse("abc,abc,abc"), WeightVector{1, 1, 1});
    CHECK(u.tally(0, 1) == 3);
    CHECK(u.tally(1, 0) == 0);
}

TEST_CASE("pairwise rules on the cycle")
{
    const Profile p = Profile::parse(cycle_profile);
    CHECK(black_winner(p, WeightVector{6, 4, 3}).letter() == 'c');
    CHECK(black_winner(p, WeightVector{4, 4, 2}).letter() == 'a');
    const IntVector borda = weighted_scores(p, ScoringVector::borda(3), WeightVector{6, 4, 3});
    CHECK(borda[0] == 14);
    CHECK(borda[1] == 10);
    CHECK(borda[2] == 15);
    CHECK(maximin_winner(p, WeightVector{6, 4, 3}).letter() == 'c');
    CHECK(kemeny_winner(p, WeightVector{6, 4, 3}) != kemeny_winner(p, WeightVector{4, 4, 2}));
    CHECK(copeland_winner(Profile::parse("abc,bca,cab"), WeightVector{1, 1, 1}).letter() == 'a');
}

TEST_CASE("the two antiplurality score vectors agree")
{
    const RuleId shifted = RuleId::scoring(ScoringVector::parse("1,1,0"));
    const RuleId anti(RuleKind::antiplurality);
    for (const auto& w : testing_support::all_up_to(3, 8)) {
        const WinnerEvaluator a(anti, wv(w), 3);
        const WinnerEvaluator b(shifted, wv(w), 3);
        ProfileSpace(3, 3).for_each([&](ProfileIndex, std::span<const std::uint32_t> r) { REQUIRE(a(r) == b(r)); });
    }
}

TEST_CASE("weighted rules equal the unweighted rule on the replicated electorate")
{
    for (int n = 1; n <= 3; ++n)
        for (int m = 2; m <= 3; ++m) {
            const auto profiles = oracle::all_profiles(n, m);
            for (const auto& w : testing_support::all_up_to(n, 6))
                for (const auto& name : all_rules) {
                    const RuleId rule = RuleId::parse(name);
                    const WinnerEvaluator eval(rule, wv(w), m);
                    for (const auto& e : profiles) {
                        const Profile p = profile_of(e);
                        const int expected = oracle::weighted_winner(name, e, w, m);
                        REQUIRE(apply_rule(rule, wv(w), p).index == expected);
                        REQUIRE(eval.winner(p).index == expected);
                    }
                }
        }
}

TEST_CASE("replication oracle at four alternatives")
{
    std::mt19937_64 rng(7);
    const auto rankings = oracle::all_rankings(4);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(rankings.size()) - 1);
    std::uniform_int_distribution<int> weight(0, 4);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + trial % 4;
        oracle::Electorate e;
        oracle::Weights w;
        for (int i = 0; i < n; ++i) {
            e.push_back(rankings[pick(rng)]);
            w.push_back(weight(rng));
        }
        for (const auto& name : all_rules)
            REQUIRE(apply_rule(RuleId::parse(name), wv(w), profile_of(e)).index ==
                    oracle::weighted_winner(name, e, w, 4));
    }
}

TEST_CASE("winner maps are invariant under scaling the weights")
{
    for (const auto& w : testing_support::sorted_up_to(3, 5))
        for (const auto& name : all_rules) {
            const RuleId rule = RuleId::parse(name);
            const WinnerEvaluator base(rule, wv(w), 3);
            for (std::int64_t lambda : {2, 3, 7, 1'000'003}) {
                const WinnerEvaluator scaled(rule, wv(w).scaled(lambda), 3);
                ProfileSpace(3, 3).for_each(
                    [&](ProfileIndex, std::span<const std::uint32_t> r) { REQUIRE(base(r) == scaled(r)); });
            }
        }
}

TEST_CASE("scoring winners are invariant under positive affine maps of the scores")
{
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"2,1,0", "2,1/2,-1"},
        {"1,1/2,0", "7,5,3"},
        {"1,0,0", "5/3,2/3,2/3"},
        {"0,0,-1", "3,3,1"},
    };
    for (const auto& [a, b] : pairs) {
        const RuleId ra = RuleId::scoring(ScoringVector::parse(a));
        const RuleId rb = RuleId::scoring(ScoringVector::parse(b));
        for (const auto& w : testing_support::all_up_to(3, 6)) {
            const WinnerEvaluator ea(ra, wv(w), 3);
            const WinnerEvaluator eb(rb, wv(w), 3);
            ProfileSpace(3, 3).for_each([&](ProfileIndex, std::span<const std::uint32_t> r) { REQUIRE(ea(r) == eb(r)); });
        }
    }
}

TEST_CASE("relabeling players together with their weights keeps the winner")
{
    std::vector<int> pi{0, 1, 2};
    do {
        const auto inv = inverse(pi);
        for (const auto& w : testing_support::all_up_to(3, 4))
            for (const auto& name : all_rules) {
                const RuleId rule = RuleId::parse(name);
                for (const Profile& p : ProfileSpace(3, 3))
                    REQUIRE(apply_rule(rule, wv(w), permute_players(p, pi)) ==
                            apply_rule(rule, wv(w).permuted(inv), p));
            }
    } while (std::next_permutation(pi.begin(), pi.end()));
}

TEST_CASE("Copeland and Black elect a Condorcet winner")
{
    auto check = [](const Profile& p, const WeightVector& w) {
        const auto cw = majority_matrix(p, w).condorcet_winner();
        if (!cw)
            return;
        REQUIRE(copeland_winner(p, w) == *cw);
        REQUIRE(black_winner(p, w) == *cw);
    };
    for (const auto& w : testing_support::all_up_to(3, 6))
        for (const Profile& p : ProfileSpace(3, 3))
            check(p, wv(w));

    std::mt19937_64 rng(11);
    const auto rankings = oracle::all_rankings(5);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(rankings.size()) - 1);
    std::uniform_int_distribution<int> weight(0, 9);
    for (int trial = 0; trial < 5000; ++trial) {
        oracle::Electorate e;
        oracle::Weights w;
        for (int i = 0; i < 5; ++i) {
            e.push_back(rankings[pick(rng)]);
            w.push_back(weight(rng));
        }
        check(profile_of(e), wv(w));
    }
}

TEST_CASE("majority tallies are complementary")
{
    for (const auto& w : testing_support::all_up_to(3, 5))
        for (const Profile& p : ProfileSpace(3, 3)) {
            const MajorityMatrix mm = majority_matrix(p, wv(w));
            for (int j = 0; j < 3; ++j) {
                REQUIRE(mm.tally(j, j) == 0);
                for (int k = 0; k < 3; ++k)
                    if (j != k)
                        REQUIRE(mm.tally(j, k) + mm.tally(k, j) == wv(w).sum());
            }
        }
}

TEST_CASE("weighted majority games with two alternatives")
{
    const SimpleGame g = to_simple_game(WeightVector{6, 5, 2});
    CHECK(g.is_winning(std::vector<int>{0, 1}));
    CHECK(g.is_winning(std::vector<int>{0, 2}));
    CHECK(g.is_winning(std::vector<int>{1, 2}));
    CHECK_FALSE(g.is_winning(std::vector<int>{2}));

    const SimpleGame d = to_simple_game(WeightVector{1, 0, 0});
    CHECK(d.is_winning(0b001));
    CHECK_FALSE(d.is_winning(0b000));
    CHECK_FALSE(d.is_winning(0b110));

    const SimpleGame t = to_simple_game(WeightVector{2, 1, 1});
    CHECK(t.is_winning(0b001));
    CHECK(t.is_winning(0b110));
    CHECK_FALSE(t.is_winning(0b010));

    for (int n = 1; n <= 4; ++n)
        for (const auto& w : testing_support::all_up_to(n, 6)) {
            const SimpleGame game = to_simple_game(wv(w));
            for (const Profile& p : ProfileSpace(n, 2)) {
                std::uint64_t supporters = 0;
                for (int i = 0; i < n; ++i)
                    if (p[i].top().index == 0)
                        supporters |= std::uint64_t{1} << i;
                const bool a_wins = wv(w).is_zero() || game.is_winning(supporters);
                for (const auto& name : all_rules)
                    REQUIRE((apply_rule(RuleId::parse(name), wv(w), p).index == 0) == a_wins);
            }
        }
}

TEST_CASE("large weights are tallied exactly")
{
    const Profile p = Profile::parse("abc,bca,cab");
    const WeightVector w{4'000'000'001, 4'000'000'000, 4'000'000'000};
    CHECK(plurality_winner(p, w).letter() == 'a');
    CHECK(plurality_winner(p, WeightVector{4'000'000'000, 4'000'000'001, 4'000'000'000}).letter() == 'b');
    CHECK_THROWS_AS(WeightVector({std::int64_t{1} << 62, std::int64_t{1} << 62}), Error);
}

TEST_CASE("rule names and scoring vectors")
{
    CHECK(RuleId::parse("borda").kind() == RuleKind::borda);
    CHECK(RuleId::parse("scoring:1,1/2,0").is_scoring());
    CHECK(RuleId::parse("scoring:1,1/2,0").name() == "scoring:1,1/2,0");
    CHECK_FALSE(RuleId::parse("kemeny").is_scoring());
    CHECK_THROWS_AS(RuleId::parse("approval"), ParseError);
    CHECK_THROWS_AS(ScoringVector::parse("0,1,2"), Error);
    CHECK_THROWS_AS(ScoringVector::parse("1,1,1"), Error);
    CHECK(ScoringVector::parse("1,1/2,0").scale() == 2);
    CHECK(RuleId(RuleKind::antiplurality).scoring_vector(4) == ScoringVector::parse("0,0,0,-1"));
    CHECK_THROWS_AS(RuleId::parse("scoring:1,0,0").scoring_vector(4), Error);
    CHECK_THROWS_AS(apply_rule(RuleId(RuleKind::borda), WeightVector{1, 1}, Profile::parse("abc")), Error);
}

TEST_CASE("weight vector parsing")
{
    CHECK(WeightVector::parse("5, 3,2,2").to_string() == "5,3,2,2");
    CHECK(WeightVector::parse("1,3,2").sorted().to_string() == "3,2,1");
    CHECK_THROWS_AS(WeightVector::parse("1,-2"), ParseError);
    CHECK_THROWS_AS(WeightVector::parse("1,,2"), ParseError);
    CHECK_THROWS_AS(WeightVector::parse(""), ParseError);
    CHECK_THROWS_AS(WeightVector::parse("99999999999999999999"), ParseError);
}

}
