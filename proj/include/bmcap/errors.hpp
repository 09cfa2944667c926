// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>

namespace bmcap {

// Energy-budget violation: theta > 1 or r outside its allowed interval.
struct ConstraintError : std::domain_error {
    using std::domain_error::domain_error;
};

// Non-positive-definite covariance matrix or an unpairable symplectic spectrum.
struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative search (bisection, golden section, bracket expansion) failed
// to converge within its budget.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature exceeded its subdivision budget.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bmcap
