// errors.hpp - Exception types shared by the engines and the command-line front end

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zeno {

// Precondition or invariant violation on a physical quantity.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A computation that started from valid input but could not finish within tolerance
// (eigensolver stall, trajectory leaving the physical state space, failed write).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration document. line == 0 when the problem is not
// tied to a single line (e.g. a missing key).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what)
        , line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace zeno
