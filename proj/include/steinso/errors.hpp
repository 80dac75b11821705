#pragma once

#include <stdexcept>
#include <string>

namespace steinso {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or size mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

// Input violates a type invariant (non-orthogonal rotation, bad tolerance, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Principal matrix logarithm requested within 1e-6 of a rotation angle pi,
// where the log is not unique.
struct AntipodalError : Error {
    using Error::Error;
};

// A score function returned a matrix that is not tangent at the query point.
struct TangencyError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

// Linear system unsolvable even as a minimum-norm least-squares problem.
struct SingularSystemError : Error {
    using Error::Error;
};

// Too few Monte Carlo draws requested for a quantile estimate.
struct InsufficientDrawsError : Error {
    using Error::Error;
};

// Rejection sampler acceptance rate collapsed below usable levels.
struct EnvelopeTooLooseError : Error {
    using Error::Error;
};

}  // namespace steinso
