#pragma once

#include <stdexcept>
#include <string>

namespace owt {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bracketing search found no sign change.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation of a field envelope on a mode that was never normalized.
class UnnormalizedModeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The trapping potential has no local minimum outside the fiber.
class NoMinimumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stationary point was found but the Hessian is not positive definite.
class SaddlePointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or data file. Carries the offending line when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace owt
