#pragma once

#include <stdexcept>
#include <string>

namespace bpdn {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data or configuration was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed: divergence, overflow, non-convergence.
class NumericalError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace bpdn
