#pragma once

#include <stdexcept>
#include <string>

namespace cover {

// Base class for everything this library throws.
class CoverError : public std::runtime_error {
public:
    explicit CoverError(const std::string& what) : std::runtime_error(what) {}
};

// Instance data violates the set-system invariants (bad neighbor id,
// negative cost, length mismatch, syntax error in an instance file, ...).
class MalformedInstanceError : public CoverError {
public:
    using CoverError::CoverError;
};

// A scalar argument is outside its documented domain.
class ParameterError : public CoverError {
public:
    using CoverError::CoverError;
};

// The input fractional solution fails a feasibility precondition.
class InfeasibleInputError : public CoverError {
public:
    using CoverError::CoverError;
};

// The online adversary broke its contract (coverage shortfall, announced
// maximum subset size exceeded).
class AdversaryContractError : public CoverError {
public:
    using CoverError::CoverError;
};

// A stateful session was driven out of protocol (element fed twice, ...).
class ProtocolError : public CoverError {
public:
    using CoverError::CoverError;
};

// Numeric evaluation failed to converge to the requested tolerance.
class NumericError : public CoverError {
public:
    using CoverError::CoverError;
};

}  // namespace cover
