#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/rules.hpp"

namespace wcg {

/// coeffs . w <= rhs over non-negative integer weights.
struct LinearConstraint {
    IntVector coeffs;
    std::int64_t rhs = 0;

    /// Divides by the gcd of the coefficients and floors the right-hand side.
    /// Equivalent over integer w.
    LinearConstraint normalized() const;
    /// Holds for every w >= 0.
    bool is_trivial() const;
    /// Holds for no w >= 0.
    bool is_contradiction() const;
    bool satisfied_by(const IntVector& w) const;

    friend bool operator==(const LinearConstraint& a, const LinearConstraint& b)
    {
        return a.rhs == b.rhs && a.coeffs.size() == b.coeffs.size() && a.coeffs == b.coeffs;
    }
};

/// A deduplicated set of integer rows over n weight variables.
///
/// Rows are normalized on insertion. Rows that hold for all w >= 0 are
/// dropped, and among rows with identical coefficients only the tightest
/// right-hand side is kept (so a strict row absorbs its weak twin).
class ConstraintSystem {
public:
    ConstraintSystem() = default;
    explicit ConstraintSystem(int variables) : vars_(variables) {}

    int variables() const { return vars_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const std::vector<LinearConstraint>& rows() const { return rows_; }

    /// Returns true if the system changed.
    bool add(const LinearConstraint& row);
    bool add(const IntVector& coeffs, std::int64_t rhs) { return add(LinearConstraint{coeffs, rhs}); }
    void add_all(const ConstraintSystem& other);

    /// w_i >= w_{i+1} for all i.
    void add_monotone();
    /// sum of w >= 1, which excludes the zero vector.
    void add_nonzero();
    /// True when every monotone row is present.
    bool monotone() const;

    /// A row that no non-negative w satisfies, if one was added.
    const std::optional<LinearConstraint>& contradiction() const { return contradiction_; }

    bool satisfied_by(const IntVector& w) const;
    bool satisfied_by(const WeightVector& w) const { return satisfied_by(w.values()); }

    IntMatrix coefficient_matrix() const;
    IntVector rhs_vector() const;

    /// One row per line: the coefficients of the equivalent "> 0" or ">= 0"
    /// form, space separated, then the relation token and 0. Only rows with
    /// rhs in {0, -1} can be written.
    std::string to_text() const;
    static ConstraintSystem from_text(std::string_view text);

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const;
    };

    int vars_ = 0;
    std::vector<LinearConstraint> rows_;
    std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> index_;
    std::optional<LinearConstraint> contradiction_;
};

/// Appends the rows forcing `winner` at a profile with score matrix S (m x n):
/// strictly more score than every lower-indexed alternative, at least as much
/// as every higher-indexed one.
void append_winner_rows(ConstraintSystem& sys, const IntMatrix& S, int winner);

} // namespace wcg
