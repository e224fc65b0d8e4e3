#pragma once

#include <stdexcept>
#include <string>

namespace gonodyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter set fails the nonnegativity / group-normalization contract.
struct InvalidParamsError : Error {
    using Error::Error;
};

// State passed where a fixed point (residual <= 1e-10) is required.
struct NotAFixedPointError : Error {
    using Error::Error;
};

// Coefficient triple violates the structural identity that pins the
// eigenvalues 0 and 2 at nonzero fixed points.
struct IdentityViolatedError : Error {
    using Error::Error;
};

// Initial state is not on one of the closed-form invariant planes.
struct NotOnSupportedSubspaceError : Error {
    using Error::Error;
};

// Invariant-plane closed form requested but the parameter conditions for
// that plane (zero coefficients) do not hold.
struct ParameterConditionError : Error {
    using Error::Error;
};

// State dimensions do not match the operator's type counts.
struct DimensionMismatchError : Error {
    using Error::Error;
};

// Nonnegative-orthant analysis applied to a state with a negative entry.
struct NegativeCoordinateError : Error {
    using Error::Error;
};

// Bad CLI usage / config file contents. Maps to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// A cross-check the program relies on failed at runtime. Maps to exit
// code 3 and always indicates a bug, never bad input.
struct InternalCheckError : Error {
    using Error::Error;
};

}  // namespace gonodyn
