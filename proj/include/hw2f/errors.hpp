#pragma once

#include <stdexcept>
#include <string>

namespace hw2f {

/// Argument outside the mathematical domain of an operation (negative
/// mean reversion, t > T, maturity before observation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent or unusable configuration (a1 <= a2, horizon mismatch,
/// malformed config file).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quantity is undefined for the given inputs, e.g. a correlation
/// between series of which one has zero variance.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Calibration target outside the range the model can reach.
class UnattainableTarget : public DegenerateError {
public:
    UnattainableTarget(const std::string& what, double achievable_minimum)
        : DegenerateError(what), minimum_(achievable_minimum) {}

    double minimum() const noexcept { return minimum_; }

private:
    double minimum_;
};

}  // namespace hw2f
