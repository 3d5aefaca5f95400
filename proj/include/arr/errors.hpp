#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on symbol count or truncation degree.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (degree out of range,
/// exponential of a series with a constant term, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class NonInvertibleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Model data that is malformed or referentially inconsistent.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Model text that could not be parsed.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Two fibers imply different generic Euler characteristics.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A fiber whose multiplicities are not prime to the residue characteristic.
class TamenessError : public Error {
public:
    TamenessError(std::string what, long long prime, std::vector<std::string> offenders)
        : Error(std::move(what)), prime_(prime), offenders_(std::move(offenders)) {}

    long long prime() const noexcept { return prime_; }
    const std::vector<std::string>& offenders() const noexcept { return offenders_; }

private:
    long long prime_;
    std::vector<std::string> offenders_;
};

/// Two computations that must agree did not.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace arr
