#pragma once

#include <stdexcept>
#include <string>

namespace binzeta {

/// An argument lies outside the mathematical domain of an operation
/// (inverting zero, a vanishing denominator).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition does not hold (non-coprime decimation, bad degree).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration was refused because it exceeds the configured size cap.
class CostRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs that should be consistent are not (non-integral multiplicity,
/// counts that cannot come from a curve of the stated genus).
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace binzeta
