#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace wcg {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVector = Vector<std::int64_t>;
using IntMatrix = Matrix<std::int64_t>;

/// Base class for domain errors (bad input, infeasible requests).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A profile space or table would not fit the platform's index type or the
/// configured materialization limit.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A solver or enumerator hit an explicit resource limit before deciding.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Malformed text input (profiles, weights, rules, files).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace wcg
