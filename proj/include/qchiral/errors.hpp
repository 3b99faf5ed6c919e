#pragma once

#include <stdexcept>
#include <string>

namespace qchiral {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input fails a norm or trace requirement.
struct NormalizationError : Error { using Error::Error; };
// Scalar parameter outside its legal interval.
struct RangeError : Error { using Error::Error; };
// Matrix that must be positive semidefinite is not.
struct PositivityError : Error { using Error::Error; };
// Ensemble weights do not form a probability distribution.
struct WeightError : Error { using Error::Error; };
// Structural requirement violated (Hermiticity, tracelessness).
struct ConstraintError : Error { using Error::Error; };
// Too many ensemble terms.
struct CardinalityError : Error { using Error::Error; };
// Index arguments out of range or not distinct.
struct IndexError : Error { using Error::Error; };
// Numerical residue exceeded a hard ceiling; input is suspect.
struct NumericalError : Error { using Error::Error; };
// Malformed input file or unwritable output path.
struct ParseError : Error { using Error::Error; };
// Two redundant computation paths disagree; implementation bug.
struct PathDisagreement : Error { using Error::Error; };
// Correlation matrix is rank deficient; chirality signs meaningless.
struct ChiralityUndefined : Error { using Error::Error; };
// Eigenvalue spectrum too degenerate for bi-orthogonal normalization.
struct DegeneracyError : Error { using Error::Error; };

}  // namespace qchiral
