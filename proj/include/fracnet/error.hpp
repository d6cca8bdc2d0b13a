#pragma once

#include <stdexcept>
#include <string>

namespace fracnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: a violated precondition or config invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
};

/// Explicit Euler step size outside the stable range.
class StabilityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Lattice-Boltzmann blow-up (negative or non-finite populations).
class InstabilityError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class InsufficientData : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed input file; carries the offending line when known.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, int line = 0)
        : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace fracnet
