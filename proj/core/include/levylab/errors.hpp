#pragma once

#include <stdexcept>

namespace levylab {

/// Argument outside the mathematical domain of an operation
/// (poles, unsupported dimension, exponent windows, divergent kernels).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical procedure failed its accuracy or stability contract
/// (quadrature non-convergence, overflow, violated step-size bound,
/// asymmetric kernel samples).
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A classification routine could not reach a defensible verdict.
struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace levylab
