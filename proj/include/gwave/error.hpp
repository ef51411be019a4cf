#pragma once

#include <stdexcept>
#include <string>

namespace gwave {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: shapes, ranges, config values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The input is well formed but violates a mathematical precondition
/// (non-strategic observation set, non-absorbent set, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel failed to converge or a system was numerically singular.
class NumericalError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace gwave
