#pragma once

#include <stdexcept>
#include <string>

namespace ffjet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic contract violations. Every throw site names the operation and
// the offending value so batch runs can surface the failing certificate.
struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientPrecision : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct PrecisionExhausted : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct NotDivisible : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct NotAUnit : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct NotInSDagger : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct StrictnessViolation : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct LengthMismatch : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct NotInGhostImage : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct NonzeroLinearTerm : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct ConsistencyFailure : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct IntegralityFailure : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct PrecisionTooLowToCertify : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

struct CaseNotCovered : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

} // namespace ffjet
