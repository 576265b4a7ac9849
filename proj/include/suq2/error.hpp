#pragma once

#include <stdexcept>
#include <string>

namespace suq2 {

/// Raised when an input violates an operation's precondition
/// (q outside (0,1), a*c >= 0, invalid labels, negative truncation, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when operator domains/codomains or vector lengths disagree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical procedure could not produce a trustworthy answer.
class DiagnosticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace suq2
