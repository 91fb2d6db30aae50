#include "wcg/constraints.hpp"

#include <numeric>
#include <sstream>

namespace wcg {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

LinearConstraint LinearConstraint::normalized() const
{
    std::int64_t g = 0;
    for (auto c : coeffs)
        g = std::gcd(g, c < 0 ? -c : c);
    if (g <= 1)
        return *this;
    return {coeffs / g, floor_div(rhs, g)};
}

bool LinearConstraint::is_trivial() const
{
    return rhs >= 0 && (coeffs.array() <= 0).all();
}

bool LinearConstraint::is_contradiction() const
{
    return rhs < 0 && (coeffs.array() >= 0).all();
}

bool LinearConstraint::satisfied_by(const IntVector& w) const
{
    return coeffs.dot(w) <= rhs;
}

std::size_t ConstraintSystem::KeyHash::operator()(const std::vector<std::int64_t>& v) const
{
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool ConstraintSystem::add(const LinearConstraint& row)
{
    if (row.coeffs.size() != vars_)
        throw Error("constraint has " + std::to_string(row.coeffs.size()) + " coefficients, expected " +
                    std::to_string(vars_));
    const LinearConstraint r = row.normalized();
    if (r.is_trivial())
        return false;
    if (r.is_contradiction() && !contradiction_)
        contradiction_ = r;
    std::vector<std::int64_t> key(r.coeffs.data(), r.coeffs.data() + r.coeffs.size());
    auto [it, inserted] = index_.try_emplace(std::move(key), rows_.size());
    if (inserted) {
        rows_.push_back(r);
        return true;
    }
    auto& existing = rows_[it->second];
    if (r.rhs < existing.rhs) {
        existing.rhs = r.rhs;
        return true;
    }
    return false;
}

void ConstraintSystem::add_all(const ConstraintSystem& other)
{
    for (const auto& r : other.rows_)
        add(r);
}

void ConstraintSystem::add_monotone()
{
    for (int i = 0; i + 1 < vars_; ++i) {
        IntVector c = IntVector::Zero(vars_);
        c[i] = -1;
        c[i + 1] = 1;
        add(c, 0);
    }
}

void ConstraintSystem::add_nonzero()
{
    add(IntVector::Constant(vars_, -1), -1);
}

bool ConstraintSystem::monotone() const
{
    for (int i = 0; i + 1 < vars_; ++i) {
        std::vector<std::int64_t> key(vars_, 0);
        key[i] = -1;
        key[i + 1] = 1;
        auto it = index_.find(key);
        if (it == index_.end() || rows_[it->second].rhs > 0)
            return false;
    }
    return true;
}

bool ConstraintSystem::satisfied_by(const IntVector& w) const
{
    if (w.size() != vars_)
        throw Error("weight vector length does not match the constraint system");
    for (const auto& r : rows_)
        if (!r.satisfied_by(w))
            return false;
    return true;
}

IntMatrix ConstraintSystem::coefficient_matrix() const
{
    IntMatrix A(static_cast<Eigen::Index>(rows_.size()), vars_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        A.row(static_cast<Eigen::Index>(i)) = rows_[i].coeffs.transpose();
    return A;
}

IntVector ConstraintSystem::rhs_vector() const
{
    IntVector b(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        b[static_cast<Eigen::Index>(i)] = rows_[i].rhs;
    return b;
}

std::string ConstraintSystem::to_text() const
{
    std::ostringstream out;
    for (const auto& r : rows_) {
        if (r.rhs != 0 && r.rhs != -1)
            throw Error("only homogeneous rows (rhs 0 or -1) have a text form");
        for (Eigen::Index i = 0; i < r.coeffs.size(); ++i)
            out << -r.coeffs[i] << ' ';
        out << (r.rhs == -1 ? ">" : ">=") << " 0\n";
    }
    return out.str();
}

ConstraintSystem ConstraintSystem::from_text(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<ConstraintSystem> sys;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream row(line);
        std::vector<std::string> tokens;
        for (std::string tok; row >> tok;)
            tokens.push_back(tok);
        if (tokens.size() < 3 || tokens.back() != "0")
            throw ParseError("constraint line " + std::to_string(line_no) + " must end with a relation and 0");
        const std::string& rel = tokens[tokens.size() - 2];
        if (rel != ">" && rel != ">=")
            throw ParseError("constraint line " + std::to_string(line_no) + " has unknown relation '" + rel + "'");
        const int n = static_cast<int>(tokens.size()) - 2;
        if (!sys)
            sys.emplace(n);
        else if (sys->variables() != n)
            throw ParseError("constraint line " + std::to_string(line_no) + " has a different variable count");
        IntVector c(n);
        for (int i = 0; i < n; ++i) {
            try {
                std::size_t used = 0;
                c[i] = -std::stoll(tokens[i], &used);
                if (used != tokens[i].size())
                    throw std::invalid_argument(tokens[i]);
            } catch (const std::exception&) {
                throw ParseError("constraint line " + std::to_string(line_no) + " has a bad coefficient '" +
                                 tokens[i] + "'");
            }
        }
        sys->add(c, rel == ">" ? -1 : 0);
    }
    return sys ? std::move(*sys) : ConstraintSystem(0);
}

void append_winner_rows(ConstraintSystem& sys, const IntMatrix& S, int winner)
{
    for (Eigen::Index k = 0; k < S.rows(); ++k) {
        if (k == winner)
            continue;
        IntVector diff = (S.row(k) - S.row(winner)).transpose();
        sys.add(diff, k < winner ? -1 : 0);
    }
}

} // namespace wcg
