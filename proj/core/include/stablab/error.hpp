// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace stablab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its documented domain (or a precondition is not met).
class DomainError : public Error {
public:
    DomainError(std::string parameter, const std::string& what)
        : Error(parameter + ": " + what), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Smallness hypothesis B < 1, S < 1 (or similar) does not hold.
class AssumptionViolation : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical procedure failed to reach its tolerance.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double estimate, double error_bound)
        : Error(what + " (estimate " + std::to_string(estimate) + ", error bound " +
                std::to_string(error_bound) + ")"),
          estimate_(estimate),
          error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace stablab
