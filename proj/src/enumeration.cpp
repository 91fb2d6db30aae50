#include "wcg/enumeration.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "wcg/equivalence.hpp"
#include "wcg/signatures.hpp"

namespace wcg {

using nlohmann::json;

namespace {

/// One search level: a profile (or group of profiles sharing a score matrix).
struct Item {
    IntMatrix scores;
    ProfileIndex first_profile = 0;
    int distinct_columns = 0;
};

std::vector<Item> build_items(int n, int m, const ScoringVector& s, bool compact)
{
    std::vector<Item> items;
    if (compact) {
        const SignatureSpace space(s, n);
        items.reserve(space.size());
        space.for_each([&](std::uint64_t code, std::span<const int> cols) {
            std::vector<int> c(cols.begin(), cols.end());
            std::sort(c.begin(), c.end());
            const int distinct = static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
            items.push_back({space.score_matrix(code), space.first_profile(code), distinct});
        });
    } else {
        const ProfileSpace space(n, m);
        if (space.size() > SignatureSpace::max_signatures)
            throw SizeLimitError("too many profiles for an uncompacted search at (n=" + std::to_string(n) +
                                 ", m=" + std::to_string(m) + ")");
        const auto& perms = space.permutations();
        space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
            Item item{IntMatrix(m, n), j, 0};
            std::vector<std::vector<std::int64_t>> cols;
            for (int i = 0; i < n; ++i) {
                std::vector<std::int64_t> col(m);
                for (int a = 0; a < m; ++a)
                    col[a] = item.scores(a, i) = s.integer_scores()[perms.position(ranks[i], a)];
                cols.push_back(col);
            }
            std::sort(cols.begin(), cols.end());
            item.distinct_columns = static_cast<int>(std::unique(cols.begin(), cols.end()) - cols.begin());
            items.push_back(std::move(item));
        });
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.distinct_columns != b.distinct_columns)
            return a.distinct_columns < b.distinct_columns;
        return a.first_profile < b.first_profile;
    });
    return items;
}

/// Winner at score matrix S under w: first maximizer of S w.
int winner_at(const IntMatrix& S, const IntVector& w)
{
    const IntVector scores = S * w;
    Eigen::Index best;
    scores.maxCoeff(&best);
    // maxCoeff returns the first maximizer for ties.
    return static_cast<int>(best);
}

struct Node {
    std::vector<std::uint8_t> prefix;
    ConstraintSystem sys;
    std::vector<IntVector> witnesses;
};

ConstraintSystem root_system(int n)
{
    ConstraintSystem sys(n);
    sys.add_monotone();
    sys.add_nonzero();
    return sys;
}

json state_to_json(const EnumerationResult& r, bool compact, const std::vector<Node>& stack)
{
    json j;
    j["rule"] = r.rule.name();
    j["n"] = r.players;
    j["m"] = r.alternatives;
    j["compact"] = compact;
    j["nodes"] = r.nodes;
    j["lpCalls"] = r.lp_calls;
    j["representatives"] = json::array();
    for (const auto& w : r.representatives)
        j["representatives"].push_back(w.to_std());
    j["nonUnique"] = json::array();
    for (const auto& w : r.non_unique)
        j["nonUnique"].push_back(w.to_std());
    j["frontier"] = json::array();
    for (const auto& node : stack) {
        json f;
        f["prefix"] = node.prefix;
        f["witnesses"] = json::array();
        for (const auto& w : node.witnesses)
            f["witnesses"].push_back(std::vector<std::int64_t>(w.data(), w.data() + w.size()));
        j["frontier"].push_back(f);
    }
    return j;
}

} // namespace

EnumerationResult branch_and_cut(int n, int m, const RuleId& rule, const EnumerationOptions& options)
{
    if (!rule.is_scoring())
        throw Error("branch-and-cut needs a scoring rule; got " + rule.name());
    if (n < 1 || m < 2)
        throw Error("branch-and-cut needs n >= 1 and m >= 2");
    const ScoringVector s = rule.scoring_vector(m);
    const std::vector<Item> items = build_items(n, m, s, options.compact);
    const std::size_t depth_total = items.size();

    EnumerationResult result;
    result.rule = rule;
    result.players = n;
    result.alternatives = m;
    result.method = options.compact ? "branch-and-cut" : "branch-and-cut (uncompacted)";

    SolverLimits limits = options.limits;
    if (options.time_limit) {
        const auto deadline = std::chrono::steady_clock::now() + *options.time_limit;
        if (!limits.deadline || deadline < *limits.deadline)
            limits.deadline = deadline;
    }

    const ConstraintSystem root = root_system(n);

    // Winners that some weight vector realizes at each item on its own.
    std::vector<std::uint8_t> allowed(depth_total * m, 0);
    for (std::size_t t = 0; t < depth_total; ++t) {
        for (int k = 0; k < m; ++k) {
            ConstraintSystem sys = root;
            append_winner_rows(sys, items[t].scores, k);
            if (sys.contradiction())
                continue;
            ++result.lp_calls;
            allowed[t * m + k] = solve_feasible(sys, limits).feasible ? 1 : 0;
        }
    }

    std::vector<Node> stack;
    if (!options.resume_state.empty()) {
        const json j = json::parse(options.resume_state);
        if (j.at("rule").get<std::string>() != rule.name() || j.at("n").get<int>() != n || j.at("m").get<int>() != m ||
            j.at("compact").get<bool>() != options.compact)
            throw Error("resume state belongs to a different enumeration");
        result.nodes = j.at("nodes").get<std::uint64_t>();
        result.lp_calls = j.at("lpCalls").get<std::uint64_t>();
        for (const auto& w : j.at("representatives"))
            result.representatives.emplace_back(w.get<std::vector<std::int64_t>>());
        for (const auto& w : j.at("nonUnique"))
            result.non_unique.emplace_back(w.get<std::vector<std::int64_t>>());
        for (const auto& f : j.at("frontier")) {
            Node node{f.at("prefix").get<std::vector<std::uint8_t>>(), root, {}};
            if (node.prefix.size() > depth_total)
                throw Error("resume state prefix is longer than the profile list");
            for (std::size_t t = 0; t < node.prefix.size(); ++t)
                append_winner_rows(node.sys, items[t].scores, node.prefix[t]);
            for (const auto& w : f.at("witnesses")) {
                const auto v = w.get<std::vector<std::int64_t>>();
                node.witnesses.push_back(Eigen::Map<const IntVector>(v.data(), static_cast<Eigen::Index>(v.size())));
            }
            stack.push_back(std::move(node));
        }
    } else {
        Node start{{}, root, {}};
        ++result.lp_calls;
        auto feas = solve_feasible(start.sys, limits);
        start.witnesses.push_back(feas.weights->values());
        stack.push_back(std::move(start));
    }

    const std::uint64_t first_node = result.nodes;
    bool interrupted = false;
    while (!stack.empty()) {
        if (result.nodes - first_node >= options.max_nodes ||
            (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)) {
            interrupted = true;
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        ++result.nodes;

        const std::size_t depth = node.prefix.size();
        if (depth == depth_total) {
            std::optional<MinSumResult> rep;
            try {
                rep = solve_min_sum(node.sys, limits);
            } catch (const ResourceLimitError&) {
                stack.push_back(std::move(node));
                interrupted = true;
                break;
            }
            if (!rep)
                throw Error("internal error: feasible leaf without integer solution");
            result.representatives.push_back(rep->weights);
            if (rep->multiple)
                result.non_unique.push_back(rep->weights);
            continue;
        }

        const Item& item = items[depth];
        std::vector<std::vector<IntVector>> by_winner(m);
        for (const auto& w : node.witnesses)
            by_winner[winner_at(item.scores, w)].push_back(w);

        // Push in reverse so that winner 0 is explored first.
        for (int k = m - 1; k >= 0; --k) {
            if (!allowed[depth * m + k])
                continue;
            Node child{node.prefix, node.sys, std::move(by_winner[k])};
            child.prefix.push_back(static_cast<std::uint8_t>(k));
            append_winner_rows(child.sys, item.scores, k);
            if (child.sys.contradiction())
                continue;
            if (child.witnesses.empty()) {
                ++result.lp_calls;
                auto feas = solve_feasible(child.sys, limits);
                if (!feas.feasible)
                    continue;
                child.witnesses.push_back(feas.weights->values());
            }
            stack.push_back(std::move(child));
        }
    }

    std::sort(result.representatives.begin(), result.representatives.end(), representative_less);
    std::sort(result.non_unique.begin(), result.non_unique.end(), representative_less);
    if (interrupted) {
        result.exhaustive = false;
        result.resume_state = state_to_json(result, options.compact, stack).dump();
    } else {
        result.exhaustive = true;
    }
    return result;
}

EnumerationResult heuristic_enumerate(int n, int m, const RuleId& rule, std::int64_t max_sum)
{
    if (max_sum < 1)
        throw Error("max sum must be at least 1");
    if (n < 1 || m < 2)
        throw Error("need n >= 1 and m >= 2");
    EnumerationResult result;
    result.rule = rule;
    result.players = n;
    result.alternatives = m;
    result.method = "heuristic";
    result.search_bound = max_sum;

    std::unordered_set<std::string> seen;
    std::vector<std::int64_t> w(n, 0);
    // Sorted vectors of a fixed sum in lexicographic order.
    auto visit = [&](auto&& self, int k, std::int64_t remaining, std::int64_t cap) -> void {
        const int left = n - k;
        if (left == 1) {
            if (remaining > cap)
                return;
            w[k] = remaining;
            const WeightVector wv(w);
            const auto map = compact_winner_map(rule, wv, m);
            if (seen.emplace(map.begin(), map.end()).second)
                result.representatives.push_back(wv);
            ++result.nodes;
            return;
        }
        const std::int64_t lo = (remaining + left - 1) / left;
        const std::int64_t hi = std::min(cap, remaining);
        for (std::int64_t v = lo; v <= hi; ++v) {
            w[k] = v;
            self(self, k + 1, remaining - v, v);
        }
    };
    for (std::int64_t sum = 1; sum <= max_sum; ++sum)
        visit(visit, 0, sum, sum);
    result.exhaustive = false;
    return result;
}

EnumerationResult enumerate_copeland(int n, const EnumerationOptions& options)
{
    EnumerationResult result = branch_and_cut(n, 2, RuleKind::plurality, options);
    result.rule = RuleKind::copeland;
    result.valid_for_all_m_ge = 2;
    result.method += " at two alternatives";
    return result;
}

EnumerationResult antiplurality_closed_form(int n, int m)
{
    if (n < 1)
        throw Error("need at least one player");
    if (m < n + 1)
        throw Error("the antiplurality closed form needs m >= n + 1 (got n=" + std::to_string(n) +
                    ", m=" + std::to_string(m) + ")");
    EnumerationResult result;
    result.rule = RuleKind::antiplurality;
    result.players = n;
    result.alternatives = m;
    result.valid_for_all_m_ge = n + 1;
    result.method = "closed form";
    result.exhaustive = true;
    for (int k = 1; k <= n; ++k) {
        IntVector v = IntVector::Zero(n);
        v.head(k).setOnes();
        result.representatives.emplace_back(v);
    }
    return result;
}

int plurality_reduce(int n, int m)
{
    return std::max(std::min(m, n), 2);
}

EnumerationResult enumerate_classes(int n, int m, const RuleId& rule, const EnumerationOptions& options)
{
    if (n < 1 || m < 2)
        throw Error("need n >= 1 and m >= 2");
    switch (rule.kind()) {
    case RuleKind::copeland: {
        auto r = enumerate_copeland(n, options);
        r.alternatives = m;
        return r;
    }
    case RuleKind::antiplurality:
        if (m >= n + 1)
            return antiplurality_closed_form(n, m);
        return branch_and_cut(n, m, rule, options);
    case RuleKind::plurality: {
        const int reduced = plurality_reduce(n, m);
        auto r = branch_and_cut(n, reduced, rule, options);
        r.alternatives = m;
        if (m >= n)
            r.valid_for_all_m_ge = reduced;
        if (reduced != m)
            r.method += " at " + std::to_string(reduced) + " alternatives";
        return r;
    }
    case RuleKind::borda:
    case RuleKind::scoring:
        return branch_and_cut(n, m, rule, options);
    default:
        throw Error("exact enumeration is not available for " + rule.name() + "; use the heuristic");
    }
}

} // namespace wcg
