#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsec {

/// Caller violated an operation's precondition (bad id, wrong dimension, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is outside the domain of a geometric query (e.g. clearance of a colliding point).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The scenario has no samplable free space within the rejection budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quality metric cannot be computed (no answerable queries, empty graph, m == 0).
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace rsec
