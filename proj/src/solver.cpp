#include "wcg/solver.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/gmp.hpp>

#include "wcg/lp.hpp"

namespace wcg {

namespace mp = boost::multiprecision;

void SolverLimits::check_deadline() const
{
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw ResourceLimitError("time limit reached before the search finished");
}

// ---------------------------------------------------------------------------
// Winner maps

WinnerMap WinnerMap::compute(const RuleId& rule, const WeightVector& w, int m)
{
    const ProfileSpace space(w.size(), m);
    if (space.size() > max_materialized_profiles)
        throw SizeLimitError("winner map for (n=" + std::to_string(w.size()) + ", m=" + std::to_string(m) +
                             ") is too large to materialize");
    WinnerMap map{rule.name(), w.size(), m, std::vector<std::uint8_t>(space.size())};
    const WinnerEvaluator eval(rule, w, m);
    space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
        map.winners[j] = static_cast<std::uint8_t>(eval(ranks));
    });
    return map;
}

WinnerMap WinnerMap::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        return false;
    };
    if (!next_line())
        throw ParseError("winner map is empty");
    WinnerMap map;
    {
        std::istringstream header(line);
        if (!(header >> map.rule >> map.players >> map.alternatives))
            throw ParseError("winner map header must be 'rule n m'");
    }
    if (map.players < 1 || map.alternatives < 2 || map.alternatives > PermutationTable::max_alternatives)
        throw ParseError("winner map header has an unsupported (n, m)");
    const ProfileIndex total = profile_count(map.players, map.alternatives);
    if (total > max_materialized_profiles)
        throw SizeLimitError("winner map is too large to materialize");
    const int m = map.alternatives;
    auto decode_winner = [m](std::string_view tok) -> int {
        int v = -1;
        if (tok.size() == 1 && tok[0] >= 'a' && tok[0] <= 'z')
            v = tok[0] - 'a';
        else {
            try {
                std::size_t used = 0;
                v = std::stoi(std::string(tok), &used);
                if (used != tok.size())
                    v = -1;
            } catch (const std::exception&) {
                v = -1;
            }
        }
        if (v < 0 || v >= m)
            throw ParseError("bad winner '" + std::string(tok) + "'");
        return v;
    };
    if (!next_line())
        throw ParseError("winner map has no entries");
    std::string first = line;
    first.erase(std::remove_if(first.begin(), first.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                first.end());
    const bool dense = first.find_first_not_of("abcdefgh") == std::string::npos && first.size() == total;
    map.winners.assign(total, 0);
    if (dense) {
        for (ProfileIndex j = 0; j < total; ++j)
            map.winners[j] = static_cast<std::uint8_t>(decode_winner(std::string_view(&first[j], 1)));
        if (next_line())
            throw ParseError("unexpected content after dense winner line");
        return map;
    }
    std::vector<bool> seen(total, false);
    ProfileIndex count = 0;
    do {
        std::istringstream row(line);
        std::string idx, win, extra;
        if (!(row >> idx >> win) || (row >> extra))
            throw ParseError("winner map line must be 'index winner': " + line);
        ProfileIndex j = 0;
        try {
            std::size_t used = 0;
            j = std::stoull(idx, &used);
            if (used != idx.size())
                throw std::invalid_argument(idx);
        } catch (const std::exception&) {
            throw ParseError("bad profile index '" + idx + "'");
        }
        if (j >= total)
            throw ParseError("profile index " + idx + " out of range");
        if (seen[j])
            throw ParseError("profile index " + idx + " listed twice");
        seen[j] = true;
        map.winners[j] = static_cast<std::uint8_t>(decode_winner(win));
        ++count;
    } while (next_line());
    if (count != total)
        throw ParseError("winner map is partial: " + std::to_string(count) + " of " + std::to_string(total) +
                         " profiles given");
    return map;
}

std::string WinnerMap::to_text(bool dense) const
{
    std::string out = rule + " " + std::to_string(players) + " " + std::to_string(alternatives) + "\n";
    if (dense) {
        out.reserve(out.size() + winners.size() + 1);
        for (auto v : winners)
            out.push_back(static_cast<char>('a' + v));
        out.push_back('\n');
        return out;
    }
    for (std::size_t j = 0; j < winners.size(); ++j)
        out += std::to_string(j) + " " + std::to_string(winners[j]) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Building rows

namespace {

void check_map(const WinnerMap& map, const ScoringVector& s)
{
    if (s.size() != map.alternatives)
        throw Error("scoring vector length does not match the winner map");
    if (map.winners.size() != profile_count(map.players, map.alternatives))
        throw Error("winner map is partial");
}

/// Adds rows profile by profile. Returns the first profile at which the
/// system became contradictory or inconsistent, if any.
std::optional<ProfileIndex> append_map_rows(ConstraintSystem& sys, const WinnerMap& map, const ScoringVector& s)
{
    check_map(map, s);
    const ProfileSpace space(map.players, map.alternatives);
    std::optional<ProfileIndex> witness;
    std::optional<SignatureSpace> sigs;
    try {
        sigs.emplace(s, map.players);
    } catch (const SizeLimitError&) {
    }
    if (sigs) {
        // One set of rows per (signature, winner) pair.
        std::vector<std::uint8_t> seen(sigs->size(), 0);
        space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
            const auto code = sigs->code_of(ranks);
            const std::uint8_t bit = std::uint8_t(1u << map.winners[j]);
            if (seen[code] & bit)
                return;
            const bool conflict = seen[code] != 0;
            seen[code] |= bit;
            const bool had = sys.contradiction().has_value();
            append_winner_rows(sys, sigs->score_matrix(code), map.winners[j]);
            if (!witness && (conflict || (!had && sys.contradiction())))
                witness = j;
        });
        return witness;
    }
    const auto& perms = space.permutations();
    const int m = map.alternatives;
    IntMatrix S(m, map.players);
    space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
        for (int i = 0; i < map.players; ++i)
            for (int a = 0; a < m; ++a)
                S(a, i) = s.integer_scores()[perms.position(ranks[i], a)];
        const bool had = sys.contradiction().has_value();
        append_winner_rows(sys, S, map.winners[j]);
        if (!witness && !had && sys.contradiction())
            witness = j;
    });
    return witness;
}

std::optional<IntVector> integerize(const Vector<ExactRational>& x)
{
    mp::mpz_int l = 1;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        l = mp::lcm(l, mp::mpz_int(mp::denominator(x[i])));
    IntVector w(x.size());
    const mp::mpz_int limit = std::numeric_limits<std::int64_t>::max() / 4;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        mp::mpz_int v = mp::mpz_int(mp::numerator(x[i])) * (l / mp::mpz_int(mp::denominator(x[i])));
        if (v > limit)
            return std::nullopt;
        w[i] = v.convert_to<std::int64_t>();
    }
    return w;
}

struct BranchAndBound {
    const SolverLimits& limits;
    std::uint64_t nodes = 0;

    std::optional<IntVector> solve(const Matrix<ExactRational>& A_ex, const Vector<ExactRational>& b_ex)
    {
        if (++nodes > limits.max_nodes)
            throw ResourceLimitError("branch-and-bound node limit reached");
        if ((nodes & 255) == 0)
            limits.check_deadline();
        const Vector<ExactRational> zero = Vector<ExactRational>::Zero(A_ex.cols());
        auto lp = maximize<ExactRational>(A_ex, b_ex, zero);
        if (lp.status != LpStatus::optimal)
            return std::nullopt;
        for (Eigen::Index j = 0; j < lp.x.size(); ++j) {
            if (mp::denominator(lp.x[j]) == 1)
                continue;
            const mp::mpz_int fl = mp::mpz_int(mp::numerator(lp.x[j])) / mp::mpz_int(mp::denominator(lp.x[j]));
            // Down branch: x_j <= floor, then up branch: -x_j <= -(floor + 1).
            for (int dir = 0; dir < 2; ++dir) {
                Matrix<ExactRational> A2(A_ex.rows() + 1, A_ex.cols());
                A2.topRows(A_ex.rows()) = A_ex;
                A2.row(A_ex.rows()).setZero();
                Vector<ExactRational> b2(b_ex.size() + 1);
                b2.head(b_ex.size()) = b_ex;
                if (dir == 0) {
                    A2(A_ex.rows(), j) = 1;
                    b2[b_ex.size()] = ExactRational(fl);
                } else {
                    A2(A_ex.rows(), j) = -1;
                    b2[b_ex.size()] = -ExactRational(fl + 1);
                }
                if (auto r = solve(A2, b2))
                    return r;
            }
            return std::nullopt;
        }
        IntVector w(lp.x.size());
        for (Eigen::Index j = 0; j < lp.x.size(); ++j)
            w[j] = mp::numerator(lp.x[j]).convert_to<std::int64_t>();
        return w;
    }
};

/// Exhaustive search over vectors of a fixed sum in lexicographic order,
/// pruned by a lower bound on every row.
class FixedSumSearch {
public:
    FixedSumSearch(const ConstraintSystem& sys, bool sorted, const SolverLimits& limits)
        : n_(sys.variables()), sorted_(sorted), limits_(limits)
    {
        for (const auto& r : sys.rows()) {
            coeffs_.insert(coeffs_.end(), r.coeffs.data(), r.coeffs.data() + n_);
            rhs_.push_back(r.rhs);
            std::vector<std::int64_t> suffix(n_ + 1, 0);
            for (int k = n_ - 1; k >= 0; --k)
                suffix[k] = (k == n_ - 1) ? r.coeffs[k] : std::min(r.coeffs[k], suffix[k + 1]);
            suffix_min_.insert(suffix_min_.end(), suffix.begin(), suffix.end());
        }
        rows_ = rhs_.size();
        partial_.assign((n_ + 1) * rows_, 0);
        current_.assign(n_, 0);
    }

    /// Finds up to two solutions with the given sum; returns how many.
    int run(std::int64_t sum)
    {
        found_.clear();
        if (n_ == 0)
            return 0;
        descend(0, sum, sum);
        return static_cast<int>(found_.size());
    }

    const std::vector<std::vector<std::int64_t>>& found() const { return found_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void descend(int k, std::int64_t remaining, std::int64_t cap)
    {
        if (found_.size() >= 2)
            return;
        if (++nodes_ > limits_.max_nodes)
            throw ResourceLimitError("minimum-sum search node limit reached");
        if ((nodes_ & 4095) == 0)
            limits_.check_deadline();
        const int left = n_ - k;
        std::int64_t lo = 0;
        std::int64_t hi = remaining;
        if (sorted_) {
            lo = (remaining + left - 1) / left;
            hi = std::min(cap, remaining);
        }
        if (k == n_ - 1)
            lo = remaining;
        for (std::int64_t v = lo; v <= hi && found_.size() < 2; ++v) {
            current_[k] = v;
            const std::int64_t rest = remaining - v;
            bool ok = true;
            for (std::size_t r = 0; r < rows_; ++r) {
                const __int128 p = partial_[k * rows_ + r] + __int128(coeffs_[r * n_ + k]) * v;
                partial_[(k + 1) * rows_ + r] = p;
                const __int128 bound = rest == 0 ? p : p + __int128(suffix_min_[r * (n_ + 1) + k + 1]) * rest;
                if (bound > rhs_[r]) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            if (k == n_ - 1)
                found_.push_back(current_);
            else
                descend(k + 1, rest, v);
        }
    }

    int n_;
    bool sorted_;
    const SolverLimits& limits_;
    std::size_t rows_ = 0;
    std::vector<std::int64_t> coeffs_;
    std::vector<std::int64_t> rhs_;
    std::vector<std::int64_t> suffix_min_;
    std::vector<__int128> partial_;
    std::vector<std::int64_t> current_;
    std::vector<std::vector<std::int64_t>> found_;
    std::uint64_t nodes_ = 0;
};

} // namespace

ConstraintSystem build_constraints(const WinnerMap& map, const ScoringVector& s, bool monotone)
{
    ConstraintSystem sys(map.players);
    append_map_rows(sys, map, s);
    if (monotone)
        sys.add_monotone();
    return sys;
}

ConstraintSystem build_constraints(const SignatureSpace& space, std::span<const std::uint8_t> winners, bool monotone)
{
    if (winners.size() != space.size())
        throw Error("signature winner table has the wrong length");
    ConstraintSystem sys(space.players());
    for (std::uint64_t code = 0; code < space.size(); ++code)
        append_winner_rows(sys, space.score_matrix(code), winners[code]);
    if (monotone)
        sys.add_monotone();
    return sys;
}

// ---------------------------------------------------------------------------
// Solving

FeasibilityResult solve_feasible(const ConstraintSystem& sys, const SolverLimits& limits)
{
    FeasibilityResult result;
    if (sys.contradiction()) {
        result.contradiction = sys.contradiction();
        return result;
    }
    const int n = sys.variables();
    if (sys.empty()) {
        result.feasible = true;
        result.weights = WeightVector::zeros(n);
        return result;
    }
    const IntMatrix A = sys.coefficient_matrix();
    const IntVector b = sys.rhs_vector();
    std::optional<IntVector> w;
    if (b.maxCoeff() <= 0) {
        // Scaling a rational solution by a positive factor keeps every row
        // with rhs <= 0 satisfied, so rational and integer feasibility agree.
        const Vector<ExactRational> zero = Vector<ExactRational>::Zero(n);
        auto lp = maximize<ExactRational>(to_exact(A), to_exact(b), zero);
        if (lp.status == LpStatus::infeasible)
            return result;
        w = integerize(lp.x);
        if (!w)
            throw ResourceLimitError("integer solution exceeds 64-bit weights");
    } else {
        BranchAndBound bb{limits};
        w = bb.solve(to_exact(A), to_exact(b));
        if (!w)
            return result;
    }
    if (!sys.satisfied_by(*w))
        throw Error("internal error: solver point violates its system");
    result.feasible = true;
    result.weights = WeightVector(*w);
    return result;
}

std::optional<MinSumResult> solve_min_sum(const ConstraintSystem& sys, const SolverLimits& limits)
{
    if (sys.contradiction())
        return std::nullopt;
    const int n = sys.variables();
    if (sys.empty() || sys.rhs_vector().minCoeff() >= 0)
        return MinSumResult{WeightVector::zeros(n), false};

    const IntMatrix A = sys.coefficient_matrix();
    const IntVector b = sys.rhs_vector();
    const Vector<ExactRational> minus_ones = Vector<ExactRational>::Constant(n, ExactRational(-1));
    auto lp = maximize<ExactRational>(to_exact(A), to_exact(b), minus_ones);
    if (lp.status != LpStatus::optimal)
        return std::nullopt;
    const ExactRational lp_min = -lp.objective;
    mp::mpz_int lower_z = mp::mpz_int(mp::numerator(lp_min)) / mp::mpz_int(mp::denominator(lp_min));
    if (ExactRational(lower_z) < lp_min)
        lower_z += 1;
    std::int64_t lower = lower_z.convert_to<std::int64_t>();

    std::int64_t upper;
    if (b.maxCoeff() <= 0) {
        auto w = integerize(lp.x);
        if (!w)
            throw ResourceLimitError("integer solution exceeds 64-bit weights");
        upper = w->sum();
    } else {
        auto feas = solve_feasible(sys, limits);
        if (!feas.feasible)
            return std::nullopt;
        upper = feas.weights->sum();
    }
    upper = std::min(upper, limits.max_sum);

    FixedSumSearch search(sys, sys.monotone(), limits);
    for (std::int64_t s = lower; s <= upper; ++s) {
        limits.check_deadline();
        const int count = search.run(s);
        if (count > 0)
            return MinSumResult{WeightVector(search.found().front()), count > 1};
    }
    throw ResourceLimitError("minimum-sum search exceeded the weight-sum limit of " + std::to_string(limits.max_sum));
}

MinSumResult minimal_representation_detail(const RuleId& rule, const WeightVector& w, int m, const SolverLimits& limits)
{
    const int n = w.size();
    if (n < 1)
        throw Error("need at least one player");
    if (m < 2)
        throw Error("need at least two alternatives");
    if (w.is_zero())
        return {WeightVector::zeros(n), false};
    RuleId effective = rule;
    int mm = m;
    if (rule.kind() == RuleKind::copeland) {
        effective = RuleKind::plurality;
        mm = 2;
    } else if (!rule.is_scoring()) {
        throw Error("minimal representations are supported for scoring rules and copeland, not " + rule.name());
    }
    if (effective.kind() == RuleKind::antiplurality && mm >= n + 1) {
        // Only the number of players with positive weight matters.
        const auto positive = (w.values().array() > 0).count();
        IntVector step = IntVector::Zero(n);
        step.head(positive).setOnes();
        return {WeightVector(step), false};
    }
    if (effective.kind() == RuleKind::plurality && mm > n)
        mm = std::max(n, 2);

    const SignatureSpace space(effective.scoring_vector(mm), n);
    const auto target = space.winners(w.sorted());
    ConstraintSystem sys = build_constraints(space, target, true);
    sys.add_nonzero();
    auto result = solve_min_sum(sys, limits);
    if (!result)
        throw Error("internal error: no weight vector reproduces the game of " + w.to_string());
    if (space.winners(result->weights) != target)
        throw Error("internal error: representative " + result->weights.to_string() + " does not reproduce the game");
    return *result;
}

WeightVector minimal_representation(const RuleId& rule, const WeightVector& w, int m, const SolverLimits& limits)
{
    return minimal_representation_detail(rule, w, m, limits).weights;
}

FeasibilityResult is_r_weighted(const WinnerMap& map, const ScoringVector& s, const SolverLimits& limits)
{
    ConstraintSystem sys(map.players);
    const auto witness = append_map_rows(sys, map, s);
    FeasibilityResult result = solve_feasible(sys, limits);
    if (!result.feasible) {
        result.witness = witness;
        return result;
    }
    const ProfileSpace space(map.players, map.alternatives);
    const WinnerEvaluator eval(RuleId::scoring(s), *result.weights, map.alternatives);
    space.for_each([&](ProfileIndex j, std::span<const std::uint32_t> ranks) {
        if (eval(ranks) != map.winners[j])
            throw Error("internal error: solver weights " + result.weights->to_string() +
                        " do not reproduce the winner map at profile " + std::to_string(j));
    });
    return result;
}

} // namespace wcg
