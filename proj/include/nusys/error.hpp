#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nusys {

// Malformed text input. Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(format(line, column, what)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        std::string out = "line " + std::to_string(line);
        if (column != 0)
            out += ", column " + std::to_string(column);
        return out + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

// A structurally well-formed system that does not denote a unique string:
// broken invariants, out-of-range extractions, looping length equations.
class ValidityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Position resolution revisits itself; the message names the offending position.
class CycleError : public ValidityError {
public:
    using ValidityError::ValidityError;
};

// Refused work: brute-force size limits, memory budgets.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A length or position does not fit in 63 bits.
class OverflowError : public LimitError {
public:
    using LimitError::LimitError;
};

}  // namespace nusys
