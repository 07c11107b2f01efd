#pragma once

#include <stdexcept>
#include <string>

namespace smoothprog {

/// Input outside the mathematical domain of an operation (n <= 0, u <= 1, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured memory or work budget.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// An Euler factor 1 - chi(p) p^{-s} vanished.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Internal consistency check failed; indicates a bug rather than bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace smoothprog
