#pragma once

#include <stdexcept>
#include <string>

namespace ncqm {

/// Base class for every error raised by the library. Each subclass maps to
/// one failure category so callers can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole or other isolated singular point.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Malformed input object (wrong shape, broken invariant, bad config).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Series, quadrature or iteration failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Root search interval without a sign change.
class BracketingError : public Error {
public:
    using Error::Error;
};

/// Operation called for a model it does not apply to.
class UsageError : public Error {
public:
    using Error::Error;
};

/// State violates 1 - dV/dE >= 0 somewhere on its support.
class NormalizabilityError : public Error {
public:
    using Error::Error;
};

/// Discretization grid too small or too coarse for the requested levels.
class GridError : public Error {
public:
    using Error::Error;
};

/// Parameter combination for which a closed form degenerates.
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

}  // namespace ncqm
