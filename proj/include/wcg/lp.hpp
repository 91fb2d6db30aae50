#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "wcg/common.hpp"

namespace wcg {

using ExactRational = boost::multiprecision::mpq_rational;

enum class LpStatus { optimal, infeasible, unbounded };

template <typename Scalar>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vector<Scalar> x;
    Scalar objective{};
};

namespace detail {

/// Dictionary simplex with Bland's rule. Row i reads
///   basic[i] = D(i, 0) + sum_k D(i, k) * nonbasic[k-1];
/// the last row is the objective.
template <typename Scalar>
class Dictionary {
public:
    Dictionary(const Matrix<Scalar>& A, const Vector<Scalar>& b, bool with_aux)
        : rows_(A.rows()), cols_(A.cols() + (with_aux ? 1 : 0))
    {
        // Variable ids: aux (if any) is 0, originals follow, then slacks.
        const Eigen::Index shift = with_aux ? 1 : 0;
        D_ = Matrix<Scalar>::Zero(rows_ + 1, cols_ + 1);
        nonbasic_.resize(cols_);
        for (Eigen::Index k = 0; k < cols_; ++k)
            nonbasic_[k] = static_cast<int>(k);
        basic_.resize(rows_);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            basic_[i] = static_cast<int>(cols_ + i);
            D_(i, 0) = b[i];
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                D_(i, 1 + shift + j) = -A(i, j);
            if (with_aux)
                D_(i, 1) = Scalar(1);
        }
    }

    Matrix<Scalar>& table() { return D_; }
    Eigen::Index rows() const { return rows_; }
    const std::vector<int>& basic() const { return basic_; }
    const std::vector<int>& nonbasic() const { return nonbasic_; }

    void pivot(Eigen::Index r, Eigen::Index e)
    {
        const Scalar d = D_(r, e + 1);
        Vector<Scalar> row = -D_.row(r).transpose() / d;
        row[e + 1] = Scalar(1) / d;
        D_.row(r) = row.transpose();
        for (Eigen::Index i = 0; i <= rows_; ++i) {
            if (i == r)
                continue;
            const Scalar t = D_(i, e + 1);
            if (t == 0)
                continue;
            for (Eigen::Index k = 0; k < D_.cols(); ++k)
                if (k != e + 1 && row[k] != 0)
                    D_(i, k) += t * row[k];
            D_(i, e + 1) = t * row[e + 1];
        }
        std::swap(basic_[r], nonbasic_[e]);
    }

    /// Runs to optimality of the objective row. Returns false if unbounded.
    bool optimize()
    {
        for (;;) {
            Eigen::Index enter = -1;
            for (Eigen::Index k = 0; k < cols_; ++k)
                if (D_(rows_, k + 1) > 0 && (enter < 0 || nonbasic_[k] < nonbasic_[enter]))
                    enter = k;
            if (enter < 0)
                return true;
            Eigen::Index leave = -1;
            Scalar best;
            for (Eigen::Index i = 0; i < rows_; ++i) {
                const Scalar& a = D_(i, enter + 1);
                if (a >= 0)
                    continue;
                Scalar ratio = -D_(i, 0) / a;
                if (leave < 0 || ratio < best || (ratio == best && basic_[i] < basic_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    }

    void drop_column(Eigen::Index k)
    {
        const Eigen::Index last = D_.cols() - 1;
        for (Eigen::Index c = k + 1; c < last; ++c)
            D_.col(c) = D_.col(c + 1);
        D_.conservativeResize(Eigen::NoChange, last);
        nonbasic_.erase(nonbasic_.begin() + k);
        --cols_;
    }

    Vector<Scalar> values(int first_var, Eigen::Index count) const
    {
        Vector<Scalar> x = Vector<Scalar>::Zero(count);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            const int v = basic_[i] - first_var;
            if (v >= 0 && v < count)
                x[v] = D_(i, 0);
        }
        return x;
    }

private:
    Eigen::Index rows_;
    Eigen::Index cols_;
    Matrix<Scalar> D_;
    std::vector<int> basic_;
    std::vector<int> nonbasic_;
};

} // namespace detail

/// Exact simplex: maximize c.x subject to A x <= b, x >= 0.
/// Scalar must be an exact field type (e.g. ExactRational).
template <typename Scalar>
LpResult<Scalar> maximize(const Matrix<Scalar>& A, const Vector<Scalar>& b, const Vector<Scalar>& c)
{
    const Eigen::Index n = A.cols();
    LpResult<Scalar> result;
    const bool need_phase1 = b.size() > 0 && b.minCoeff() < 0;
    detail::Dictionary<Scalar> dict(A, b, need_phase1);
    int first_var = 0;
    if (need_phase1) {
        auto& D = dict.table();
        D.row(dict.rows()).setZero();
        D(dict.rows(), 1) = Scalar(-1);
        Eigen::Index most_negative;
        b.minCoeff(&most_negative);
        dict.pivot(most_negative, 0);
        dict.optimize();
        if (D(dict.rows(), 0) < 0) {
            result.status = LpStatus::infeasible;
            return result;
        }
        // Move the auxiliary variable out of the basis if it stayed at zero.
        for (Eigen::Index i = 0; i < dict.rows(); ++i) {
            if (dict.basic()[i] != 0)
                continue;
            for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dict.nonbasic().size()); ++k) {
                if (D(i, k + 1) != 0) {
                    dict.pivot(i, k);
                    break;
                }
            }
            break;
        }
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dict.nonbasic().size()); ++k) {
            if (dict.nonbasic()[k] == 0) {
                dict.drop_column(k);
                break;
            }
        }
        first_var = 1;
    }
    // Rewrite the objective in terms of the current nonbasic variables.
    auto& D = dict.table();
    const Eigen::Index obj = dict.rows();
    D.row(obj).setZero();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (c[j] == 0)
            continue;
        const int var = first_var + static_cast<int>(j);
        bool found = false;
        for (Eigen::Index i = 0; i < dict.rows() && !found; ++i) {
            if (dict.basic()[i] == var) {
                D.row(obj) += c[j] * D.row(i);
                found = true;
            }
        }
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dict.nonbasic().size()) && !found; ++k) {
            if (dict.nonbasic()[k] == var) {
                D(obj, k + 1) += c[j];
                found = true;
            }
        }
    }
    if (!dict.optimize()) {
        result.status = LpStatus::unbounded;
        return result;
    }
    result.status = LpStatus::optimal;
    result.x = dict.values(first_var, n);
    result.objective = D(obj, 0);
    return result;
}

/// Integer rows to an exact LP over ExactRational.
inline Matrix<ExactRational> to_exact(const IntMatrix& A)
{
    Matrix<ExactRational> out(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out(i, j) = ExactRational(static_cast<long long>(A(i, j)));
    return out;
}

inline Vector<ExactRational> to_exact(const IntVector& v)
{
    Vector<ExactRational> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = ExactRational(static_cast<long long>(v[i]));
    return out;
}

} // namespace wcg
