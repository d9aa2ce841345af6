#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace txlife {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of a formula.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A call sequence or argument combination the API does not accept.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input data that parsed but violates a validation rule. Carries the
/// 1-based line number when the data came from a file (0 otherwise).
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A malformed row or document.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// File system failure; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace txlife
