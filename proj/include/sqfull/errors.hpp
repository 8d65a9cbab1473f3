#pragma once

#include <stdexcept>
#include <string>

namespace sqfull {

// Base of every error the library throws. The CLI maps the concrete type to
// an exit code (domain/range -> 3, capacity -> 4, convergence -> 5).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (s = 1 for zeta,
// composite modulus, nonpositive fit values, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// Lookup beyond the extent of a precomputed table.
class RangeError : public DomainError
{
public:
    using DomainError::DomainError;
};

// Request exceeds a configured memory or time cap.
class CapacityError : public Error
{
public:
    using Error::Error;
};

// Numerical procedure failed its own refinement check.
class ConvergenceError : public Error
{
public:
    using Error::Error;
};

} // namespace sqfull
