#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace influx {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input files (edge lists, matrix files).
class ParseError : public Error {
public:
    enum class Kind { DuplicateEdge, IndexOutOfRange, MalformedLine, NonFiniteWeight };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error(what), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a function (k = 0 for the length law, etc).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: series or iterations that do not settle, inputs that
/// are not (sub)stochastic where the method requires it.
class NumericError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

class NotSubstochastic : public NumericError {
public:
    NotSubstochastic(std::size_t column, const std::string& what)
        : NumericError(what), column_(column) {}

    /// 1-based offending column.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace influx
