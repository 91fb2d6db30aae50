#include "wcg/rules.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace wcg {

namespace {

std::string trim(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::int64_t parse_int(const std::string& s, std::string_view what)
{
    if (s.empty())
        throw ParseError("empty " + std::string(what));
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError("invalid " + std::string(what) + " '" + s + "'");
    }
    if (used != s.size())
        throw ParseError("invalid " + std::string(what) + " '" + s + "'");
    return v;
}

// First maximizer: ties go to the lowest alternative index.
template <typename Derived>
int first_argmax(const Eigen::MatrixBase<Derived>& v)
{
    int best = 0;
    for (int j = 1; j < v.size(); ++j)
        if (v(j) > v(best))
            best = j;
    return best;
}

void check_shape(const Profile& p, const WeightVector& w)
{
    if (p.players() != w.size())
        throw Error("weight vector has " + std::to_string(w.size()) + " entries but the profile has " +
                    std::to_string(p.players()) + " players");
}

std::int64_t max_abs(const IntVector& v)
{
    std::int64_t best = 0;
    for (auto x : v)
        best = std::max(best, x < 0 ? -x : x);
    return best;
}

void check_score_range(const IntVector& scores, std::int64_t total)
{
    const std::int64_t bound = max_abs(scores);
    std::int64_t product = 0;
    if (__builtin_mul_overflow(bound, total, &product) || product > std::numeric_limits<std::int64_t>::max() / 4)
        throw SizeLimitError("weighted scores would overflow 64-bit arithmetic");
}

} // namespace

WeightVector::WeightVector(IntVector values) : values_(std::move(values))
{
    for (auto x : values_) {
        if (x < 0)
            throw Error("weights must be non-negative");
        if (__builtin_add_overflow(sum_, x, &sum_))
            throw SizeLimitError("weight sum overflows 64-bit arithmetic");
    }
}

WeightVector::WeightVector(std::initializer_list<std::int64_t> values)
    : WeightVector(std::vector<std::int64_t>(values))
{
}

WeightVector::WeightVector(const std::vector<std::int64_t>& values)
    : WeightVector(IntVector(Eigen::Map<const IntVector>(values.data(), static_cast<Eigen::Index>(values.size()))))
{
}

WeightVector WeightVector::parse(std::string_view text)
{
    std::vector<std::int64_t> values;
    for (const auto& part : split(trim(text), ','))
        values.push_back(parse_int(part, "weight"));
    for (auto v : values)
        if (v < 0)
            throw ParseError("weights must be non-negative: '" + std::string(text) + "'");
    return WeightVector(values);
}

WeightVector WeightVector::sorted() const
{
    IntVector v = values_;
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return WeightVector(std::move(v));
}

bool WeightVector::is_sorted() const
{
    for (Eigen::Index i = 1; i < values_.size(); ++i)
        if (values_[i] > values_[i - 1])
            return false;
    return true;
}

WeightVector WeightVector::scaled(std::int64_t factor) const
{
    if (factor < 0)
        throw Error("weights can only be scaled by a non-negative factor");
    IntVector v(values_.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (__builtin_mul_overflow(values_[i], factor, &v[i]))
            throw SizeLimitError("scaled weights overflow 64-bit arithmetic");
    return WeightVector(std::move(v));
}

WeightVector WeightVector::permuted(std::span<const int> pi) const
{
    if (static_cast<int>(pi.size()) != size())
        throw Error("player permutation has wrong length");
    std::vector<bool> seen(pi.size(), false);
    IntVector v(values_.size());
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (pi[i] < 0 || pi[i] >= size() || seen[pi[i]])
            throw Error("player permutation is not a bijection");
        seen[pi[i]] = true;
        v[static_cast<Eigen::Index>(i)] = values_[pi[i]];
    }
    return WeightVector(std::move(v));
}

std::string WeightVector::to_string() const
{
    std::string s;
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (i)
            s.push_back(',');
        s += std::to_string(values_[i]);
    }
    return s;
}

bool representative_less(const WeightVector& a, const WeightVector& b)
{
    if (a.sum() != b.sum())
        return a.sum() < b.sum();
    const auto& x = a.values();
    const auto& y = b.values();
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
}

ScoringVector::ScoringVector(std::vector<Rational> scores) : scores_(std::move(scores))
{
    if (scores_.size() < 2)
        throw Error("a scoring vector needs at least two entries");
    for (std::size_t j = 1; j < scores_.size(); ++j)
        if (scores_[j] > scores_[j - 1])
            throw Error("scoring vector must be non-increasing: " + to_string());
    if (scores_.front() == scores_.back())
        throw Error("scoring vector must not be constant: " + to_string());
    for (const auto& s : scores_)
        scale_ = std::lcm(scale_, s.denominator());
    integer_.resize(static_cast<Eigen::Index>(scores_.size()));
    for (std::size_t j = 0; j < scores_.size(); ++j) {
        const Rational scaled = scores_[j] * Rational(scale_);
        integer_[static_cast<Eigen::Index>(j)] = scaled.numerator();
    }
}

ScoringVector ScoringVector::parse(std::string_view text)
{
    std::vector<Rational> scores;
    for (const auto& part : split(trim(text), ',')) {
        auto pieces = split(part, '/');
        if (pieces.size() == 1) {
            scores.emplace_back(parse_int(pieces[0], "score"));
        } else if (pieces.size() == 2) {
            const auto den = parse_int(pieces[1], "score denominator");
            if (den == 0)
                throw ParseError("zero denominator in score '" + part + "'");
            scores.emplace_back(parse_int(pieces[0], "score numerator"), den);
        } else {
            throw ParseError("invalid score '" + part + "'");
        }
    }
    try {
        return ScoringVector(std::move(scores));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

ScoringVector ScoringVector::borda(int m)
{
    std::vector<Rational> s;
    for (int j = 0; j < m; ++j)
        s.emplace_back(m - 1 - j);
    return ScoringVector(std::move(s));
}

ScoringVector ScoringVector::plurality(int m)
{
    std::vector<Rational> s(static_cast<std::size_t>(m), Rational(0));
    s.front() = 1;
    return ScoringVector(std::move(s));
}

ScoringVector ScoringVector::antiplurality(int m)
{
    std::vector<Rational> s(static_cast<std::size_t>(m), Rational(0));
    s.back() = -1;
    return ScoringVector(std::move(s));
}

bool ScoringVector::depends_on_top_only() const
{
    return std::all_of(scores_.begin() + 1, scores_.end(), [&](const Rational& s) { return s == scores_[1]; });
}

bool ScoringVector::depends_on_bottom_only() const
{
    return std::all_of(scores_.begin(), scores_.end() - 1, [&](const Rational& s) { return s == scores_.front(); });
}

std::string ScoringVector::to_string() const
{
    std::string out;
    for (std::size_t j = 0; j < scores_.size(); ++j) {
        if (j)
            out.push_back(',');
        out += std::to_string(scores_[j].numerator());
        if (scores_[j].denominator() != 1)
            out += "/" + std::to_string(scores_[j].denominator());
    }
    return out;
}

RuleId RuleId::scoring(ScoringVector s)
{
    RuleId r(RuleKind::scoring);
    r.custom_ = std::move(s);
    return r;
}

RuleId RuleId::parse(std::string_view text)
{
    const std::string t = trim(text);
    if (t == "antiplurality")
        return RuleKind::antiplurality;
    if (t == "borda")
        return RuleKind::borda;
    if (t == "copeland")
        return RuleKind::copeland;
    if (t == "plurality")
        return RuleKind::plurality;
    if (t == "black")
        return RuleKind::black;
    if (t == "kemeny")
        return RuleKind::kemeny;
    if (t == "maximin")
        return RuleKind::maximin;
    if (t.rfind("scoring:", 0) == 0)
        return scoring(ScoringVector::parse(t.substr(8)));
    throw ParseError("unknown rule '" + std::string(text) + "'");
}

bool RuleId::is_scoring() const
{
    return kind_ == RuleKind::antiplurality || kind_ == RuleKind::borda || kind_ == RuleKind::plurality ||
           kind_ == RuleKind::scoring;
}

ScoringVector RuleId::scoring_vector(int m) const
{
    switch (kind_) {
    case RuleKind::antiplurality:
        return ScoringVector::antiplurality(m);
    case RuleKind::borda:
        return ScoringVector::borda(m);
    case RuleKind::plurality:
        return ScoringVector::plurality(m);
    case RuleKind::scoring:
        if (custom_->size() != m)
            throw Error("scoring vector " + custom_->to_string() + " has length " + std::to_string(custom_->size()) +
                        " but m=" + std::to_string(m));
        return *custom_;
    default:
        throw Error("rule '" + name() + "' is not a scoring rule");
    }
}

std::string RuleId::name() const
{
    switch (kind_) {
    case RuleKind::antiplurality: return "antiplurality";
    case RuleKind::borda: return "borda";
    case RuleKind::copeland: return "copeland";
    case RuleKind::plurality: return "plurality";
    case RuleKind::black: return "black";
    case RuleKind::kemeny: return "kemeny";
    case RuleKind::maximin: return "maximin";
    case RuleKind::scoring: return "scoring:" + custom_->to_string();
    }
    return "?";
}

int MajorityMatrix::wins(int j) const
{
    int count = 0;
    for (int k = 0; k < alternatives(); ++k)
        if (k != j && beats(j, k))
            ++count;
    return count;
}

std::optional<Alternative> MajorityMatrix::condorcet_winner() const
{
    for (int j = 0; j < alternatives(); ++j)
        if (wins(j) == alternatives() - 1)
            return Alternative{j};
    return std::nullopt;
}

IntMatrix score_matrix(const Profile& p, const ScoringVector& s)
{
    const int m = p.alternatives();
    if (s.size() != m)
        throw Error("scoring vector length " + std::to_string(s.size()) + " does not match m=" + std::to_string(m));
    IntMatrix S(m, p.players());
    for (int i = 0; i < p.players(); ++i)
        for (int j = 0; j < m; ++j)
            S(j, i) = s.integer_scores()[p[i].position_of({j})];
    return S;
}

IntVector weighted_scores(const Profile& p, const ScoringVector& s, const WeightVector& w)
{
    check_shape(p, w);
    check_score_range(s.integer_scores(), w.sum());
    return score_matrix(p, s) * w.values();
}

Alternative scoring_winner(const Profile& p, const ScoringVector& s, const WeightVector& w)
{
    if (w.is_zero()) {
        check_shape(p, w);
        return {0};
    }
    return {first_argmax(weighted_scores(p, s, w))};
}

Alternative antiplurality_winner(const Profile& p, const WeightVector& w)
{
    return scoring_winner(p, ScoringVector::antiplurality(p.alternatives()), w);
}

Alternative borda_winner(const Profile& p, const WeightVector& w)
{
    return scoring_winner(p, ScoringVector::borda(p.alternatives()), w);
}

Alternative plurality_winner(const Profile& p, const WeightVector& w)
{
    return scoring_winner(p, ScoringVector::plurality(p.alternatives()), w);
}

MajorityMatrix majority_matrix(const Profile& p, const WeightVector& w)
{
    check_shape(p, w);
    const int m = p.alternatives();
    MajorityMatrix M{IntMatrix::Zero(m, m), w.sum()};
    for (int i = 0; i < p.players(); ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                if (j != k && p[i].prefers({j}, {k}))
                    M.tally(j, k) += w[i];
    return M;
}

Alternative copeland_winner(const Profile& p, const WeightVector& w)
{
    const auto M = majority_matrix(p, w);
    Eigen::VectorXi wins(M.alternatives());
    for (int j = 0; j < M.alternatives(); ++j)
        wins(j) = M.wins(j);
    return {first_argmax(wins)};
}

Alternative black_winner(const Profile& p, const WeightVector& w)
{
    const auto M = majority_matrix(p, w);
    if (auto cw = M.condorcet_winner())
        return *cw;
    return borda_winner(p, w);
}

Alternative kemeny_winner(const Profile& p, const WeightVector& w)
{
    const int m = p.alternatives();
    if (m > PermutationTable::max_alternatives)
        throw SizeLimitError("Kemeny-Young is limited to m <= " + std::to_string(PermutationTable::max_alternatives));
    const auto M = majority_matrix(p, w);
    const auto& perms = PermutationTable::get(m);
    std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
    std::uint32_t best = 0;
    for (std::uint32_t r = 0; r < perms.size(); ++r) {
        auto R = perms.ranking(r);
        std::int64_t cost = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                cost += M.tally(R[b], R[a]);
        if (cost < best_cost) {
            best_cost = cost;
            best = r;
        }
    }
    return {perms.ranking(best)[0]};
}

Alternative maximin_winner(const Profile& p, const WeightVector& w)
{
    const auto M = majority_matrix(p, w);
    const int m = M.alternatives();
    IntVector support(m);
    for (int j = 0; j < m; ++j) {
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        for (int k = 0; k < m; ++k)
            if (k != j)
                lo = std::min(lo, M.tally(j, k));
        support(j) = lo;
    }
    return {first_argmax(support)};
}

Alternative apply_rule(const RuleId& rule, const WeightVector& w, const Profile& p)
{
    check_shape(p, w);
    if (w.is_zero())
        return {0};
    switch (rule.kind()) {
    case RuleKind::copeland: return copeland_winner(p, w);
    case RuleKind::black: return black_winner(p, w);
    case RuleKind::kemeny: return kemeny_winner(p, w);
    case RuleKind::maximin: return maximin_winner(p, w);
    default: return scoring_winner(p, rule.scoring_vector(p.alternatives()), w);
    }
}

bool SimpleGame::is_winning(std::uint64_t members) const
{
    std::int64_t weight = 0;
    for (int i = 0; i < players(); ++i)
        if (members >> i & 1u)
            weight += weights_[i];
    return 2 * weight >= weights_.sum();
}

bool SimpleGame::is_winning(std::span<const int> members) const
{
    std::uint64_t mask = 0;
    for (int i : members) {
        if (i < 0 || i >= players())
            throw Error("coalition member out of range");
        mask |= std::uint64_t{1} << i;
    }
    return is_winning(mask);
}

SimpleGame to_simple_game(const WeightVector& w)
{
    if (w.size() > 63)
        throw SizeLimitError("simple games are limited to 63 players");
    return SimpleGame(w);
}

WinnerEvaluator::WinnerEvaluator(const RuleId& rule, const WeightVector& w, int m)
    : kind_(rule.kind()), m_(m), weights_(w.to_std()), total_(w.sum()), perms_(&PermutationTable::get(m))
{
    if (m < 2)
        throw Error("need at least two alternatives");
    const std::uint32_t count = perms_->size();
    if (rule.is_scoring()) {
        const auto s = rule.scoring_vector(m);
        check_score_range(s.integer_scores(), total_);
        columns_.resize(std::size_t(count) * m);
        for (std::uint32_t r = 0; r < count; ++r)
            for (int j = 0; j < m; ++j)
                columns_[std::size_t(r) * m + j] = s.integer_scores()[perms_->position(r, j)];
    } else {
        check_score_range(IntVector::Constant(1, m), total_);
        pair_masks_.resize(count);
        for (std::uint32_t r = 0; r < count; ++r) {
            std::uint64_t mask = 0;
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    if (j != k && perms_->position(r, j) < perms_->position(r, k))
                        mask |= std::uint64_t{1} << (j * m + k);
            pair_masks_[r] = mask;
        }
    }
}

int WinnerEvaluator::operator()(std::span<const std::uint32_t> ranks) const
{
    if (total_ == 0)
        return 0;
    if (!columns_.empty()) {
        std::int64_t scores[PermutationTable::max_alternatives] = {};
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            const std::int64_t wi = weights_[i];
            if (wi == 0)
                continue;
            const std::int64_t* col = &columns_[std::size_t(ranks[i]) * m_];
            for (int j = 0; j < m_; ++j)
                scores[j] += wi * col[j];
        }
        int best = 0;
        for (int j = 1; j < m_; ++j)
            if (scores[j] > scores[best])
                best = j;
        return best;
    }
    return pairwise_winner(ranks);
}

int WinnerEvaluator::pairwise_winner(std::span<const std::uint32_t> ranks) const
{
    constexpr int cap = PermutationTable::max_alternatives;
    std::int64_t tally[cap][cap] = {};
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        const std::int64_t wi = weights_[i];
        if (wi == 0)
            continue;
        const std::uint64_t mask = pair_masks_[ranks[i]];
        for (int j = 0; j < m_; ++j)
            for (int k = j + 1; k < m_; ++k) {
                if (mask >> (j * m_ + k) & 1u)
                    tally[j][k] += wi;
                else
                    tally[k][j] += wi;
            }
    }
    auto argmax = [&](auto&& value) {
        int best = 0;
        auto best_value = value(0);
        for (int j = 1; j < m_; ++j) {
            auto v = value(j);
            if (v > best_value) {
                best = j;
                best_value = v;
            }
        }
        return best;
    };
    auto wins = [&](int j) {
        int c = 0;
        for (int k = 0; k < m_; ++k)
            if (k != j && tally[j][k] > tally[k][j])
                ++c;
        return c;
    };
    switch (kind_) {
    case RuleKind::copeland:
        return argmax(wins);
    case RuleKind::black: {
        for (int j = 0; j < m_; ++j)
            if (wins(j) == m_ - 1)
                return j;
        return argmax([&](int j) {
            std::int64_t borda = 0;
            for (int k = 0; k < m_; ++k)
                borda += tally[j][k];
            return borda;
        });
    }
    case RuleKind::maximin:
        return argmax([&](int j) {
            std::int64_t lo = std::numeric_limits<std::int64_t>::max();
            for (int k = 0; k < m_; ++k)
                if (k != j)
                    lo = std::min(lo, tally[j][k]);
            return lo;
        });
    case RuleKind::kemeny: {
        std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
        std::uint32_t best = 0;
        for (std::uint32_t r = 0; r < perms_->size(); ++r) {
            auto R = perms_->ranking(r);
            std::int64_t cost = 0;
            for (int a = 0; a < m_; ++a)
                for (int b = a + 1; b < m_; ++b)
                    cost += tally[R[b]][R[a]];
            if (cost < best_cost) {
                best_cost = cost;
                best = r;
            }
        }
        return perms_->ranking(best)[0];
    }
    default:
        throw Error("unsupported rule in pairwise evaluation");
    }
}

Alternative WinnerEvaluator::winner(const Profile& p) const
{
    if (p.players() != players() || p.alternatives() != m_)
        throw Error("profile shape does not match the evaluator");
    std::vector<std::uint32_t> ranks;
    for (const auto& pref : p)
        ranks.push_back(perms_->rank_of(pref.ranking()));
    return {(*this)(ranks)};
}

} // namespace wcg
