#pragma once

#include <stdexcept>
#include <string>

namespace pdem {

/// Argument lies outside the open interval where an evaluator is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid model or algorithm parameter (q <= 0, k > n, malformed spec, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to deliver its contract
/// (non-convergence, non-integrable quadrature, mass below floor, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pdem
