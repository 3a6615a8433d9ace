#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cadence {

// Base class for every error raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI's one-line error output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Argument outside an operation's domain (bad window, k out of range, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Well-formed input that violates a data invariant.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t line = 0)
        : Error("validation", line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Syntactically malformed input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error("parse", line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Computation undefined for the given data (zero variance, empty sample).
class UndefinedError : public Error {
public:
    explicit UndefinedError(const std::string& what) : Error("undefined", what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

} // namespace cadence
